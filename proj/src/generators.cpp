// Copyright 2026 The ttnsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ttnsim/generators.hpp"

#include <numbers>
#include <utility>
#include <vector>

#include "ttnsim/errors.hpp"
#include "ttnsim/gates.hpp"
#include "ttnsim/random.hpp"

namespace ttnsim {

namespace {

std::vector<std::pair<int, int>> lattice_pattern(int n, int pattern) {
  std::vector<std::pair<int, int>> edges;
  const int parity = pattern % 2;
  if (pattern < 2) {
    for (int r = 0; r < n; ++r) {
      for (int c = parity; c + 1 < n; c += 2) edges.emplace_back(r * n + c, r * n + c + 1);
    }
  } else {
    for (int r = parity; r + 1 < n; r += 2) {
      for (int c = 0; c < n; ++c) edges.emplace_back(r * n + c, (r + 1) * n + c);
    }
  }
  return edges;
}

}  // namespace

Circuit gen_lattice(int n, int depth, std::uint64_t seed) {
  if (n < 2) throw ValidationError("lattice side must be >= 2");
  if (depth < 1) throw ValidationError("lattice depth must be >= 1");
  Circuit c(n * n);
  // fSIM conserves excitation number, so |0...0> needs a superposition first.
  for (int q = 0; q < n * n; ++q) c.add(gates::h(q));
  std::uint64_t gate_index = 0;
  for (int layer = 0; layer < depth; ++layer) {
    for (const auto& [a, b] : lattice_pattern(n, layer % 4)) {
      Rng rng = Rng::split(seed, gate_index++);
      const double theta = rng.uniform(0.2, 1.3);
      const double phi = rng.uniform(0.2, 2.0 * std::numbers::pi - 0.2);
      c.add(gates::fsim(a, b, theta, phi));
    }
  }
  return c;
}

Circuit gen_treelike(int clusters, int reps) {
  if (clusters < 1) throw ValidationError("tree-like circuit needs >= 1 cluster");
  if (reps < 1) throw ValidationError("tree-like circuit needs >= 1 repetition");
  const int central = 4 * clusters;
  Circuit c(4 * clusters + 1);
  for (int rep = 0; rep < reps; ++rep) {
    const int hadamards = rep == 0 ? central + 1 : central;
    for (int q = 0; q < hadamards; ++q) c.add(gates::h(q));
    for (int step = 0; step < 3; ++step) {
      for (int j = 0; j < clusters; ++j) c.add(gates::cz(4 * j + step, 4 * j + step + 1));
    }
    if (rep == 0) {
      for (int j = 0; j < clusters; ++j) c.add(gates::cz(4 * j + 3, central));
    }
  }
  return c;
}

Circuit gen_random(int num_qubits, int num_gates, std::uint64_t seed,
                   double two_qubit_fraction) {
  if (num_gates < 0) throw ValidationError("gate count must be >= 0");
  Circuit c(num_qubits);
  for (int g = 0; g < num_gates; ++g) {
    Rng rng = Rng::split(seed, static_cast<std::uint64_t>(g));
    const bool two = num_qubits >= 2 && rng.uniform() < two_qubit_fraction;
    if (two) {
      const int a = static_cast<int>(rng.below(num_qubits));
      int b = static_cast<int>(rng.below(num_qubits - 1));
      if (b >= a) ++b;
      c.add(gates::random_2q(a, b, rng));
    } else {
      c.add(gates::random_1q(static_cast<int>(rng.below(num_qubits)), rng));
    }
  }
  return c;
}

}  // namespace ttnsim
