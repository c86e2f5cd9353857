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

#include "ttnsim/reference.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ttnsim/errors.hpp"

namespace ttnsim {

double DenseState::norm() const {
  double sum = 0.0;
  for (const cplx& a : amplitudes) sum += std::norm(a);
  return std::sqrt(sum);
}

DenseState basis_state(int num_qubits, const std::vector<int>& bits) {
  if (num_qubits < 1 || num_qubits > kDenseQubitCap) {
    throw ValidationError("dense simulation supports 1.." + std::to_string(kDenseQubitCap) +
                          " qubits");
  }
  if (static_cast<int>(bits.size()) != num_qubits) {
    throw ValidationError("basis state needs one bit per qubit");
  }
  std::size_t index = 0;
  for (int b : bits) {
    if (b != 0 && b != 1) throw ValidationError("basis bits must be 0 or 1");
    index = (index << 1) | static_cast<std::size_t>(b);
  }
  DenseState s{num_qubits, std::vector<cplx>(std::size_t{1} << num_qubits)};
  s.amplitudes[index] = 1.0;
  return s;
}

void apply_gate(DenseState& state, const Gate& g) {
  const int n = state.num_qubits;
  for (int q : g.qubits) {
    if (q >= n) throw ValidationError("gate qubit out of range");
  }
  auto& amp = state.amplitudes;
  const ComplexTensor& m = g.matrix;
  if (g.arity() == 1) {
    const std::size_t bit = std::size_t{1} << (n - 1 - g.qubits[0]);
    for (std::size_t i = 0; i < amp.size(); ++i) {
      if (i & bit) continue;
      const cplx a0 = amp[i], a1 = amp[i | bit];
      amp[i] = m(0, 0) * a0 + m(0, 1) * a1;
      amp[i | bit] = m(1, 0) * a0 + m(1, 1) * a1;
    }
    return;
  }
  const std::size_t ba = std::size_t{1} << (n - 1 - g.qubits[0]);
  const std::size_t bb = std::size_t{1} << (n - 1 - g.qubits[1]);
  for (std::size_t i = 0; i < amp.size(); ++i) {
    if ((i & ba) || (i & bb)) continue;
    const std::size_t idx[4] = {i, i | bb, i | ba, i | ba | bb};
    cplx in[4];
    for (int r = 0; r < 4; ++r) in[r] = amp[idx[r]];
    for (int r = 0; r < 4; ++r) {
      cplx acc = 0.0;
      for (int c = 0; c < 4; ++c) acc += m(r, c) * in[c];
      amp[idx[r]] = acc;
    }
  }
}

DenseState sv_simulate(const Circuit& c, std::vector<int> bits) {
  if (bits.empty()) bits.assign(c.num_qubits(), 0);
  DenseState s = basis_state(c.num_qubits(), bits);
  for (const Gate& g : c.gates()) apply_gate(s, g);
  return s;
}

cplx inner_product(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  if (a.size() != b.size()) throw ValidationError("state sizes differ");
  cplx acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

double fidelity(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  return std::norm(inner_product(a, b));
}

double overlap_error(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  return std::clamp(1.0 - fidelity(a, b), 0.0, 1.0);
}

double overlap_error(const DenseState& a, const DenseState& b) {
  if (a.num_qubits != b.num_qubits) throw ValidationError("qubit counts differ");
  return overlap_error(a.amplitudes, b.amplitudes);
}

}  // namespace ttnsim
