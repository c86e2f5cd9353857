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

#include <vector>

#include "ttnsim/circuit.hpp"
#include "ttnsim/tensor.hpp"

namespace ttnsim {

inline constexpr int kDenseQubitCap = 20;

/// Dense statevector, qubit 0 most significant.
struct DenseState {
  int num_qubits = 0;
  std::vector<cplx> amplitudes;

  double norm() const;
};

DenseState basis_state(int num_qubits, const std::vector<int>& bits);
void apply_gate(DenseState& state, const Gate& g);
DenseState sv_simulate(const Circuit& c, std::vector<int> bits = {});

/// <a|b>.
cplx inner_product(const std::vector<cplx>& a, const std::vector<cplx>& b);
/// 1 - |<a|b>|^2, clamped to [0, 1].
double overlap_error(const std::vector<cplx>& a, const std::vector<cplx>& b);
double overlap_error(const DenseState& a, const DenseState& b);
/// |<a|b>|^2.
double fidelity(const std::vector<cplx>& a, const std::vector<cplx>& b);

}  // namespace ttnsim
