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

#include "ttnsim/gates.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "ttnsim/errors.hpp"
#include "ttnsim/linalg.hpp"

namespace ttnsim {

namespace gates {

namespace {

const cplx kI(0.0, 1.0);

Gate one(const char* label, int q, std::initializer_list<cplx> m) {
  return make_gate(label, {q}, ComplexTensor::matrix(2, 2, m));
}

Gate two(const char* label, int a, int b, std::initializer_list<cplx> m) {
  return make_gate(label, {a, b}, ComplexTensor::matrix(4, 4, m));
}

}  // namespace

Gate id(int q) { return one("I", q, {1, 0, 0, 1}); }
Gate x(int q) { return one("X", q, {0, 1, 1, 0}); }
Gate y(int q) { return one("Y", q, {0, -kI, kI, 0}); }
Gate z(int q) { return one("Z", q, {1, 0, 0, -1}); }

Gate h(int q) {
  const double r = std::numbers::sqrt2 / 2.0;
  return one("H", q, {r, r, r, -r});
}

Gate s(int q) { return one("S", q, {1, 0, 0, kI}); }
Gate t(int q) { return one("T", q, {1, 0, 0, std::exp(kI * (std::numbers::pi / 4))}); }

Gate rx(int q, double theta) {
  const double c = std::cos(theta / 2), sn = std::sin(theta / 2);
  return one("RX", q, {c, -kI * sn, -kI * sn, c});
}

Gate ry(int q, double theta) {
  const double c = std::cos(theta / 2), sn = std::sin(theta / 2);
  return one("RY", q, {c, -sn, sn, c});
}

Gate rz(int q, double theta) {
  return one("RZ", q, {std::exp(-kI * (theta / 2)), 0, 0, std::exp(kI * (theta / 2))});
}

Gate cx(int control, int target) {
  return two("CX", control, target,
             {1, 0, 0, 0,
              0, 1, 0, 0,
              0, 0, 0, 1,
              0, 0, 1, 0});
}

Gate cz(int a, int b) {
  return two("CZ", a, b,
             {1, 0, 0, 0,
              0, 1, 0, 0,
              0, 0, 1, 0,
              0, 0, 0, -1});
}

Gate swap(int a, int b) {
  return two("SWAP", a, b,
             {1, 0, 0, 0,
              0, 0, 1, 0,
              0, 1, 0, 0,
              0, 0, 0, 1});
}

Gate identity2(int a, int b) {
  return make_gate("II", {a, b}, ComplexTensor::identity(4));
}

Gate fsim(int a, int b, double theta, double phi) {
  const double c = std::cos(theta), sn = std::sin(theta);
  return two("fSIM", a, b,
             {1, 0, 0, 0,
              0, c, -kI * sn, 0,
              0, -kI * sn, c, 0,
              0, 0, 0, std::exp(-kI * phi)});
}

ComplexTensor random_unitary(std::size_t dim, Rng& rng) {
  ComplexTensor g({dim, dim});
  for (cplx& z : g.data()) z = cplx(rng.normal(), rng.normal()) / std::numbers::sqrt2;
  QrFactors f = qr_econ(g);
  // Fix the phase freedom of QR so the result is Haar distributed.
  for (std::size_t c = 0; c < dim; ++c) {
    const cplx d = f.r(c, c);
    const cplx phase = std::abs(d) > 0 ? d / std::abs(d) : cplx(1.0);
    for (std::size_t r = 0; r < dim; ++r) f.q(r, c) *= phase;
  }
  return f.q;
}

Gate random_1q(int q, Rng& rng) { return make_gate("U1", {q}, random_unitary(2, rng)); }

Gate random_2q(int a, int b, Rng& rng) {
  return make_gate("U2", {a, b}, random_unitary(4, rng));
}

}  // namespace gates

namespace {

// Rows (out_a, in_a), columns (out_b, in_b).
ComplexTensor operator_schmidt_matrix(const Gate& g) {
  if (g.arity() != 2) {
    throw ValidationError("gate '" + g.label + "' is not a two-qubit gate");
  }
  // matrix[(o1 o2), (i1 i2)] viewed as axes (o1, o2, i1, i2).
  const ComplexTensor t = g.matrix.reshaped({2, 2, 2, 2});
  const std::array<std::size_t, 2> rows{0, 2};
  const std::array<std::size_t, 2> cols{1, 3};
  return merge_axes(t, rows, cols);
}

}  // namespace

int gate_rank(const Gate& g) {
  const auto s = singular_values(operator_schmidt_matrix(g));
  int k = 0;
  for (double v : s) {
    if (v >= kGateRankTolerance * s[0]) ++k;
  }
  return k;
}

GateSplit split_gate(const Gate& g) {
  SvdOptions opts;
  opts.threshold = kGateRankTolerance;
  const SvdFactors f = svd_econ(operator_schmidt_matrix(g), opts);
  const std::size_t k = f.rank();
  const double k_quarter = std::pow(static_cast<double>(k), 0.25);

  GateSplit out;
  out.k = static_cast<int>(k);
  out.left = ComplexTensor({2, 2, k});
  out.right = ComplexTensor({2, 2, k});
  for (std::size_t a = 0; a < k; ++a) {
    const double w = k_quarter * std::sqrt(f.s[a]);
    for (std::size_t o = 0; o < 2; ++o) {
      for (std::size_t i = 0; i < 2; ++i) {
        out.left.at({o, i, a}) = w * f.u(2 * o + i, a);
        out.right.at({o, i, a}) = w * f.v_dag(a, 2 * o + i);
      }
    }
  }
  return out;
}

}  // namespace ttnsim
