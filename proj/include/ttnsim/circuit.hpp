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

#include <cstddef>
#include <string>
#include <vector>

#include "ttnsim/tensor.hpp"

namespace ttnsim {

/// A one- or two-qubit unitary. For two-qubit gates the 4x4 matrix is in the
/// basis |q_a q_b> with q_a = qubits[0] the more significant bit.
struct Gate {
  std::string label;
  std::vector<int> qubits;
  ComplexTensor matrix;

  std::size_t arity() const { return qubits.size(); }
  bool operator==(const Gate&) const = default;
};

/// Validates arity, distinct non-negative qubits, matrix shape and
/// unitarity (to 1e-10) and returns the gate.
Gate make_gate(std::string label, std::vector<int> qubits, ComplexTensor matrix);

class Circuit {
 public:
  explicit Circuit(int num_qubits);

  int num_qubits() const { return num_qubits_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }
  std::size_t two_qubit_count() const;

  /// Appends a gate; throws ValidationError for qubits outside the circuit.
  void add(Gate gate);

  bool operator==(const Circuit&) const = default;

 private:
  int num_qubits_;
  std::vector<Gate> gates_;
};

}  // namespace ttnsim
