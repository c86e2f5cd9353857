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

#include "ttnsim/circuit.hpp"

#include <algorithm>
#include <cmath>

#include "ttnsim/errors.hpp"

namespace ttnsim {

namespace {

constexpr double kUnitaryTolerance = 1e-10;

}  // namespace

Gate make_gate(std::string label, std::vector<int> qubits, ComplexTensor matrix) {
  if (qubits.size() != 1 && qubits.size() != 2) {
    throw ValidationError("gate '" + label + "' must act on 1 or 2 qubits");
  }
  for (int q : qubits) {
    if (q < 0) throw ValidationError("gate '" + label + "' has a negative qubit index");
  }
  if (qubits.size() == 2 && qubits[0] == qubits[1]) {
    throw ValidationError("gate '" + label + "' acts twice on qubit " +
                          std::to_string(qubits[0]));
  }
  const std::size_t dim = qubits.size() == 1 ? 2 : 4;
  if (matrix.shape() != Shape{dim, dim}) {
    throw ValidationError("gate '" + label + "' matrix must be " + std::to_string(dim) +
                          "x" + std::to_string(dim));
  }
  for (const cplx& z : matrix.data()) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw ValidationError("gate '" + label + "' has a non-finite matrix entry");
    }
  }
  if (isometry_defect(matrix) > kUnitaryTolerance) {
    throw ValidationError("gate '" + label + "' matrix is not unitary");
  }
  return Gate{std::move(label), std::move(qubits), std::move(matrix)};
}

Circuit::Circuit(int num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits < 1) throw ValidationError("circuit needs at least one qubit");
}

std::size_t Circuit::two_qubit_count() const {
  return static_cast<std::size_t>(std::count_if(
      gates_.begin(), gates_.end(), [](const Gate& g) { return g.arity() == 2; }));
}

void Circuit::add(Gate gate) {
  for (int q : gate.qubits) {
    if (q < 0 || q >= num_qubits_) {
      throw ValidationError("gate '" + gate.label + "' qubit " + std::to_string(q) +
                            " out of range for " + std::to_string(num_qubits_) +
                            " qubits");
    }
  }
  gates_.push_back(std::move(gate));
}

}  // namespace ttnsim
