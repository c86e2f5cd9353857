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
#include <optional>
#include <vector>

#include "ttnsim/tensor.hpp"

namespace ttnsim {

// Singular values at or below this fraction of the largest one are treated
// as exact zeros even when no truncation is requested.
inline constexpr double kNumericalZero = 1e-12;

struct SvdOptions {
  // Relative cutoff: singular values below threshold * sigma_1 are dropped.
  double threshold = 0.0;
  std::optional<std::size_t> max_rank;
};

struct SvdFactors {
  ComplexTensor u;              // p x k, orthonormal columns
  std::vector<double> s;        // k values, nonincreasing
  ComplexTensor v_dag;          // k x q, orthonormal rows
  double discarded_sum = 0.0;   // sum of dropped singular values
  double discarded_norm2 = 0.0; // sum of squares of dropped singular values
  std::size_t full_rank = 0;    // min(p, q) before any pruning
  std::size_t truncated = 0;    // values dropped that were not numerical zeros

  std::size_t rank() const { return s.size(); }
};

/// Economical SVD with relative-threshold and rank-cap pruning. Always keeps
/// at least one singular value. Throws NumericalError on non-convergence.
SvdFactors svd_econ(const ComplexTensor& m, const SvdOptions& options = {});

/// Singular values only, nonincreasing.
std::vector<double> singular_values(const ComplexTensor& m);

struct QrFactors {
  ComplexTensor q;  // p x min(p, q), orthonormal columns
  ComplexTensor r;  // min(p, q) x q, upper triangular
};

QrFactors qr_econ(const ComplexTensor& m);

/// u * diag(s) * v_dag, for checking reconstructions.
ComplexTensor reconstruct(const SvdFactors& f);

}  // namespace ttnsim
