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

#pragma once

#include <cstdint>

namespace ttnsim {

// Closed-form size bounds for perfect m-ary trees. All results saturate at
// UINT64_MAX instead of overflowing.

/// Nodes of a perfect m-ary tree with root level l_root: (m^(l+1) - 1)/(m - 1).
std::uint64_t node_count_bound(int arity, int l_root);

/// Nodes of any tree with N leaves and arity m: floor((mN - 1)/(m - 1)).
std::uint64_t node_count_bound_leaves(int arity, std::uint64_t num_qubits);

/// floor((mN - 1)/(m - 1)) * d_max^(m+1).
std::uint64_t entries_upper_bound(int arity, std::uint64_t num_qubits, std::uint64_t d_max);

/// Same bound with the node count of a perfect tree of root level l_root.
std::uint64_t entries_upper_bound_height(int arity, int l_root, std::uint64_t d_max);

/// Per-gate cost ceil(log_m N) * d_max^(m+2).
std::uint64_t flops_bound(int arity, std::uint64_t num_qubits, std::uint64_t d_max);

/// a * b and a^e with saturation.
std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b);
std::uint64_t sat_pow(std::uint64_t base, unsigned exponent);

}  // namespace ttnsim
