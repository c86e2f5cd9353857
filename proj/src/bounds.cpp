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

#include "ttnsim/bounds.hpp"

#include <limits>

#include "ttnsim/errors.hpp"

namespace ttnsim {

namespace {

constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();

void check_arity(int arity) {
  if (arity < 2) throw ValidationError("tree arity must be >= 2");
}

}  // namespace

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kMax / a) return kMax;
  return a * b;
}

std::uint64_t sat_pow(std::uint64_t base, unsigned exponent) {
  std::uint64_t out = 1;
  for (unsigned i = 0; i < exponent; ++i) out = sat_mul(out, base);
  return out;
}

std::uint64_t node_count_bound(int arity, int l_root) {
  check_arity(arity);
  if (l_root < 0) throw ValidationError("root level must be >= 0");
  // Sum of m^i for i = 0..l, accumulated to avoid the division overflow.
  std::uint64_t total = 0, power = 1;
  for (int i = 0; i <= l_root; ++i) {
    total = total > kMax - power ? kMax : total + power;
    power = sat_mul(power, static_cast<std::uint64_t>(arity));
  }
  return total;
}

std::uint64_t node_count_bound_leaves(int arity, std::uint64_t num_qubits) {
  check_arity(arity);
  if (num_qubits == 0) return 0;
  const std::uint64_t m = static_cast<std::uint64_t>(arity);
  return (sat_mul(m, num_qubits) - 1) / (m - 1);
}

std::uint64_t entries_upper_bound(int arity, std::uint64_t num_qubits, std::uint64_t d_max) {
  return sat_mul(node_count_bound_leaves(arity, num_qubits),
                 sat_pow(d_max, static_cast<unsigned>(arity + 1)));
}

std::uint64_t entries_upper_bound_height(int arity, int l_root, std::uint64_t d_max) {
  return sat_mul(node_count_bound(arity, l_root),
                 sat_pow(d_max, static_cast<unsigned>(arity + 1)));
}

std::uint64_t flops_bound(int arity, std::uint64_t num_qubits, std::uint64_t d_max) {
  check_arity(arity);
  // ceil(log_m N) by repeated multiplication; at least one level.
  unsigned levels = 0;
  std::uint64_t reach = 1;
  while (reach < num_qubits) {
    reach = sat_mul(reach, static_cast<std::uint64_t>(arity));
    ++levels;
  }
  if (levels == 0) levels = 1;
  return sat_mul(levels, sat_pow(d_max, static_cast<unsigned>(arity + 2)));
}

}  // namespace ttnsim
