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

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace ttnsim {

using cplx = std::complex<double>;
using Shape = std::vector<std::size_t>;

/// Dense multi-axis complex array in row-major order (last axis fastest).
///
/// A rank-0 tensor (empty shape) holds a single scalar. Every axis has
/// dimension >= 1 and `size() == product(shape())` always holds.
class ComplexTensor {
 public:
  ComplexTensor();
  explicit ComplexTensor(Shape shape);
  ComplexTensor(Shape shape, std::vector<cplx> data);

  static ComplexTensor identity(std::size_t n);
  static ComplexTensor matrix(std::size_t rows, std::size_t cols,
                              std::initializer_list<cplx> values);
  static ComplexTensor vector(std::vector<cplx> values);

  const Shape& shape() const { return shape_; }
  std::size_t rank() const { return shape_.size(); }
  std::size_t dim(std::size_t axis) const;
  std::size_t size() const { return data_.size(); }

  std::span<cplx> data() { return data_; }
  std::span<const cplx> data() const { return data_; }

  cplx& at(std::span<const std::size_t> index);
  const cplx& at(std::span<const std::size_t> index) const;
  cplx& at(std::initializer_list<std::size_t> index) {
    return at(std::span<const std::size_t>(index.begin(), index.size()));
  }
  const cplx& at(std::initializer_list<std::size_t> index) const {
    return at(std::span<const std::size_t>(index.begin(), index.size()));
  }

  // Matrix accessors; only valid for rank-2 tensors.
  cplx& operator()(std::size_t r, std::size_t c) {
    return data_[r * shape_[1] + c];
  }
  const cplx& operator()(std::size_t r, std::size_t c) const {
    return data_[r * shape_[1] + c];
  }

  std::size_t rows() const { return shape_.at(0); }
  std::size_t cols() const { return shape_.at(1); }

  ComplexTensor reshaped(Shape new_shape) const;
  ComplexTensor conj() const;
  ComplexTensor scaled(cplx alpha) const;
  double norm() const;

  bool operator==(const ComplexTensor& other) const = default;

 private:
  std::size_t flat_index(std::span<const std::size_t> index) const;

  Shape shape_;
  std::vector<cplx> data_;
};

std::size_t shape_product(std::span<const std::size_t> shape);

/// Reorders axes so that output axis i is input axis perm[i].
ComplexTensor permute(const ComplexTensor& t, std::span<const std::size_t> perm);

/// Regroups all axes of `t` into a matrix whose row index runs over
/// `row_axes` and column index over `col_axes` (row-major within each group).
/// The two groups must partition the axes. Pure re-indexing.
ComplexTensor merge_axes(const ComplexTensor& t,
                         std::span<const std::size_t> row_axes,
                         std::span<const std::size_t> col_axes);

/// Tensor contraction over paired axes. Output axes are the free axes of `a`
/// followed by the free axes of `b`, each in original order.
ComplexTensor contract(const ComplexTensor& a, std::span<const std::size_t> axes_a,
                       const ComplexTensor& b, std::span<const std::size_t> axes_b);

ComplexTensor matmul(const ComplexTensor& a, const ComplexTensor& b);
ComplexTensor adjoint(const ComplexTensor& m);

/// out[..., i, ...] = sum_j m(i, j) * t[..., j, ...] on the chosen axis.
ComplexTensor apply_to_axis(const ComplexTensor& m, const ComplexTensor& t,
                            std::size_t axis);

/// Multiplies each listed axis by k and places `scale` times the original
/// entry wherever all new minor indices agree (old index major, new minor).
/// This tensors the input with a scaled k-dimensional identity connector.
ComplexTensor widen_diagonal(const ComplexTensor& t, std::span<const std::size_t> axes,
                             std::size_t k, cplx scale);

/// Applies a split gate factor f (out, in, bond) to t's physical axis and fuses
/// the factor's bond into t's bond_axis as the minor index.
ComplexTensor absorb_factor(const ComplexTensor& t, std::size_t phys_axis,
                            const ComplexTensor& f, std::size_t bond_axis);

ComplexTensor transpose(const ComplexTensor& m);

double frobenius_distance(const ComplexTensor& a, const ComplexTensor& b);

/// Largest |(m^dagger m - I)_{ij}|; measures how far the columns of `m`
/// are from orthonormal.
double isometry_defect(const ComplexTensor& m);

}  // namespace ttnsim
