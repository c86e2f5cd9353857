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

#include "ttnsim/circuit.hpp"

namespace ttnsim {

/// Nearest-neighbour circuit on an n x n grid (qubit r*n + c). Layer t
/// activates the disjoint edge set t mod 4 of: horizontal edges from even
/// columns, from odd columns, vertical edges from even rows, from odd rows.
/// Every activated edge gets an fSIM gate with seeded generic angles. A
/// leading Hadamard layer makes the start state non-trivial.
Circuit gen_lattice(int n, int depth, std::uint64_t seed);

/// Clustered circuit on 4c + 1 qubits; qubit 4c is the central qubit.
/// Each repetition starts with a Hadamard layer (cluster qubits only after
/// the first repetition) followed by CZ chains (4j,4j+1), (4j+1,4j+2),
/// (4j+2,4j+3) inside every cluster j. The first repetition also adds one
/// CZ from each cluster's last qubit 4j+3 to the central qubit.
Circuit gen_treelike(int clusters, int reps);

/// Random circuit: each gate is a Haar-random two-qubit gate on a random
/// pair with probability `two_qubit_fraction`, otherwise a Haar-random
/// single-qubit gate.
Circuit gen_random(int num_qubits, int num_gates, std::uint64_t seed,
                   double two_qubit_fraction = 0.6);

}  // namespace ttnsim
