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

#include "ttnsim/circuit.hpp"
#include "ttnsim/random.hpp"
#include "ttnsim/tensor.hpp"

namespace ttnsim {

// Relative cutoff for counting a gate's operator-Schmidt coefficients.
inline constexpr double kGateRankTolerance = 1e-10;

namespace gates {

Gate id(int q);
Gate x(int q);
Gate y(int q);
Gate z(int q);
Gate h(int q);
Gate s(int q);
Gate t(int q);
Gate rx(int q, double theta);
Gate ry(int q, double theta);
Gate rz(int q, double theta);

Gate cx(int control, int target);
Gate cz(int a, int b);
Gate swap(int a, int b);
Gate identity2(int a, int b);
// Sycamore-style fermionic simulation gate.
Gate fsim(int a, int b, double theta, double phi);

// Haar-random unitaries.
Gate random_1q(int q, Rng& rng);
Gate random_2q(int a, int b, Rng& rng);
ComplexTensor random_unitary(std::size_t dim, Rng& rng);

}  // namespace gates

/// Operator-Schmidt rank k of a two-qubit gate: the number of singular values
/// >= kGateRankTolerance * sigma_1 of the matrix regrouped as
/// (out_a, in_a) x (out_b, in_b).
int gate_rank(const Gate& g);

/// A two-qubit gate written as sum_a left[:, :, a] (x) right[:, :, a] = sqrt(k) G.
/// Axes of both factors are (out, in, bond). Each carries k^{1/4} sqrt(sigma_a),
/// so the caller must supply the compensating 1/sqrt(k) on the bond.
struct GateSplit {
  ComplexTensor left;
  ComplexTensor right;
  int k = 0;
};

GateSplit split_gate(const Gate& g);

}  // namespace ttnsim
