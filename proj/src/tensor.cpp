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

#include "ttnsim/tensor.hpp"

#include <cblas.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>

#include "ttnsim/errors.hpp"

namespace ttnsim {

namespace {

void check_dims(const Shape& shape) {
  for (std::size_t d : shape) {
    if (d == 0) throw ValidationError("tensor axis dimension must be >= 1");
  }
}

std::vector<std::size_t> row_major_strides(std::span<const std::size_t> shape) {
  std::vector<std::size_t> strides(shape.size(), 1);
  for (std::size_t i = shape.size(); i-- > 1;) {
    strides[i - 1] = strides[i] * shape[i];
  }
  return strides;
}

void gemm(std::size_t m, std::size_t n, std::size_t k, const cplx* a,
          const cplx* b, cplx* c) {
  const cplx one(1.0, 0.0);
  const cplx zero(0.0, 0.0);
  cblas_zgemm(CblasRowMajor, CblasNoTrans, CblasNoTrans, static_cast<int>(m),
              static_cast<int>(n), static_cast<int>(k), &one, a,
              static_cast<int>(k), b, static_cast<int>(n), &zero, c,
              static_cast<int>(n));
}

}  // namespace

std::size_t shape_product(std::span<const std::size_t> shape) {
  return std::accumulate(shape.begin(), shape.end(), std::size_t{1},
                         std::multiplies<>());
}

ComplexTensor::ComplexTensor() : data_(1, cplx(0.0, 0.0)) {}

ComplexTensor::ComplexTensor(Shape shape)
    : shape_(std::move(shape)), data_(shape_product(shape_), cplx(0.0, 0.0)) {
  check_dims(shape_);
}

ComplexTensor::ComplexTensor(Shape shape, std::vector<cplx> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
  check_dims(shape_);
  if (data_.size() != shape_product(shape_)) {
    throw ValidationError("tensor data length " + std::to_string(data_.size()) +
                          " does not match shape product " +
                          std::to_string(shape_product(shape_)));
  }
}

ComplexTensor ComplexTensor::identity(std::size_t n) {
  ComplexTensor t({n, n});
  for (std::size_t i = 0; i < n; ++i) t(i, i) = 1.0;
  return t;
}

ComplexTensor ComplexTensor::matrix(std::size_t rows, std::size_t cols,
                                    std::initializer_list<cplx> values) {
  return ComplexTensor({rows, cols}, std::vector<cplx>(values));
}

ComplexTensor ComplexTensor::vector(std::vector<cplx> values) {
  const std::size_t n = values.size();
  return ComplexTensor({n}, std::move(values));
}

std::size_t ComplexTensor::dim(std::size_t axis) const {
  if (axis >= shape_.size()) {
    throw ValidationError("axis " + std::to_string(axis) +
                          " out of range for rank " +
                          std::to_string(shape_.size()));
  }
  return shape_[axis];
}

std::size_t ComplexTensor::flat_index(std::span<const std::size_t> index) const {
  if (index.size() != shape_.size()) {
    throw ValidationError("index rank does not match tensor rank");
  }
  std::size_t flat = 0;
  for (std::size_t i = 0; i < index.size(); ++i) {
    if (index[i] >= shape_[i]) throw ValidationError("tensor index out of range");
    flat = flat * shape_[i] + index[i];
  }
  return flat;
}

cplx& ComplexTensor::at(std::span<const std::size_t> index) {
  return data_[flat_index(index)];
}

const cplx& ComplexTensor::at(std::span<const std::size_t> index) const {
  return data_[flat_index(index)];
}

ComplexTensor ComplexTensor::reshaped(Shape new_shape) const {
  return ComplexTensor(std::move(new_shape), data_);
}

ComplexTensor ComplexTensor::conj() const {
  ComplexTensor out = *this;
  for (cplx& z : out.data_) z = std::conj(z);
  return out;
}

ComplexTensor ComplexTensor::scaled(cplx alpha) const {
  ComplexTensor out = *this;
  for (cplx& z : out.data_) z *= alpha;
  return out;
}

double ComplexTensor::norm() const {
  double sum = 0.0;
  for (const cplx& z : data_) sum += std::norm(z);
  return std::sqrt(sum);
}

ComplexTensor permute(const ComplexTensor& t, std::span<const std::size_t> perm) {
  const std::size_t rank = t.rank();
  if (perm.size() != rank) throw ValidationError("permutation has wrong length");
  std::vector<bool> used(rank, false);
  for (std::size_t p : perm) {
    if (p >= rank || used[p]) throw ValidationError("invalid axis permutation");
    used[p] = true;
  }
  bool trivial = true;
  for (std::size_t i = 0; i < rank; ++i) trivial = trivial && perm[i] == i;
  if (trivial) return t;

  Shape out_shape(rank);
  for (std::size_t i = 0; i < rank; ++i) out_shape[i] = t.shape()[perm[i]];
  const auto in_strides = row_major_strides(t.shape());
  std::vector<std::size_t> strides(rank);
  for (std::size_t i = 0; i < rank; ++i) strides[i] = in_strides[perm[i]];

  ComplexTensor out(out_shape);
  auto src = t.data();
  auto dst = out.data();
  std::vector<std::size_t> idx(rank, 0);
  std::size_t offset = 0;
  for (std::size_t flat = 0; flat < dst.size(); ++flat) {
    dst[flat] = src[offset];
    // Odometer increment over output index, tracking the input offset.
    for (std::size_t ax = rank; ax-- > 0;) {
      if (++idx[ax] < out_shape[ax]) {
        offset += strides[ax];
        break;
      }
      offset -= strides[ax] * (out_shape[ax] - 1);
      idx[ax] = 0;
    }
  }
  return out;
}

ComplexTensor merge_axes(const ComplexTensor& t,
                         std::span<const std::size_t> row_axes,
                         std::span<const std::size_t> col_axes) {
  std::vector<std::size_t> perm(row_axes.begin(), row_axes.end());
  perm.insert(perm.end(), col_axes.begin(), col_axes.end());
  for (std::size_t ax : perm) {
    if (ax >= t.rank()) {
      throw ValidationError("merge_axes: axis " + std::to_string(ax) +
                            " out of range");
    }
  }
  ComplexTensor p = permute(t, perm);
  std::size_t rows = 1;
  for (std::size_t ax : row_axes) rows *= t.shape()[ax];
  return p.reshaped({rows, t.size() / rows});
}

ComplexTensor contract(const ComplexTensor& a, std::span<const std::size_t> axes_a,
                       const ComplexTensor& b, std::span<const std::size_t> axes_b) {
  if (axes_a.size() != axes_b.size()) {
    throw ValidationError("contract: axis lists differ in length");
  }
  std::vector<bool> con_a(a.rank(), false), con_b(b.rank(), false);
  std::size_t inner = 1;
  for (std::size_t i = 0; i < axes_a.size(); ++i) {
    const std::size_t da = a.dim(axes_a[i]);
    const std::size_t db = b.dim(axes_b[i]);
    if (da != db) {
      throw ValidationError("contract: dimension mismatch " + std::to_string(da) +
                            " vs " + std::to_string(db));
    }
    if (con_a[axes_a[i]] || con_b[axes_b[i]]) {
      throw ValidationError("contract: repeated axis");
    }
    con_a[axes_a[i]] = true;
    con_b[axes_b[i]] = true;
    inner *= da;
  }

  std::vector<std::size_t> perm_a, perm_b;
  Shape out_shape;
  for (std::size_t i = 0; i < a.rank(); ++i) {
    if (!con_a[i]) {
      perm_a.push_back(i);
      out_shape.push_back(a.dim(i));
    }
  }
  perm_a.insert(perm_a.end(), axes_a.begin(), axes_a.end());
  perm_b.assign(axes_b.begin(), axes_b.end());
  for (std::size_t i = 0; i < b.rank(); ++i) {
    if (!con_b[i]) {
      perm_b.push_back(i);
      out_shape.push_back(b.dim(i));
    }
  }

  const ComplexTensor pa = permute(a, perm_a);
  const ComplexTensor pb = permute(b, perm_b);
  const std::size_t m = a.size() / inner;
  const std::size_t n = b.size() / inner;
  ComplexTensor out(out_shape);
  gemm(m, n, inner, pa.data().data(), pb.data().data(), out.data().data());
  return out;
}

ComplexTensor matmul(const ComplexTensor& a, const ComplexTensor& b) {
  if (a.rank() != 2 || b.rank() != 2) throw ValidationError("matmul needs matrices");
  if (a.cols() != b.rows()) throw ValidationError("matmul: inner dimension mismatch");
  ComplexTensor out({a.rows(), b.cols()});
  gemm(a.rows(), b.cols(), a.cols(), a.data().data(), b.data().data(),
       out.data().data());
  return out;
}

ComplexTensor adjoint(const ComplexTensor& m) {
  if (m.rank() != 2) throw ValidationError("adjoint needs a matrix");
  ComplexTensor out({m.cols(), m.rows()});
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out(c, r) = std::conj(m(r, c));
  }
  return out;
}

ComplexTensor apply_to_axis(const ComplexTensor& m, const ComplexTensor& t,
                            std::size_t axis) {
  if (m.rank() != 2) throw ValidationError("apply_to_axis needs a matrix");
  const std::size_t old_dim = t.dim(axis);
  if (m.cols() != old_dim) {
    throw ValidationError("apply_to_axis: matrix columns " +
                          std::to_string(m.cols()) + " vs axis dimension " +
                          std::to_string(old_dim));
  }
  const std::size_t pre = shape_product(std::span(t.shape()).first(axis));
  const std::size_t post = t.size() / (pre * old_dim);
  Shape out_shape = t.shape();
  out_shape[axis] = m.rows();
  ComplexTensor out(out_shape);
  const cplx* src = t.data().data();
  cplx* dst = out.data().data();
  for (std::size_t p = 0; p < pre; ++p) {
    gemm(m.rows(), post, old_dim, m.data().data(), src + p * old_dim * post,
         dst + p * m.rows() * post);
  }
  return out;
}

ComplexTensor widen_diagonal(const ComplexTensor& t, std::span<const std::size_t> axes,
                             std::size_t k, cplx scale) {
  const std::size_t rank = t.rank();
  std::vector<bool> widen(rank, false);
  for (std::size_t a : axes) {
    if (a >= rank || widen[a]) throw ValidationError("widen_diagonal: bad axis list");
    widen[a] = true;
  }
  Shape out_shape = t.shape();
  for (std::size_t a : axes) out_shape[a] *= k;
  ComplexTensor out(out_shape);
  const auto out_strides = row_major_strides(out_shape);
  // Offset step for the shared minor index across all widened axes.
  std::size_t minor_stride = 0;
  for (std::size_t a : axes) minor_stride += out_strides[a];

  auto src = t.data();
  auto dst = out.data();
  std::vector<std::size_t> idx(rank, 0);
  std::size_t base = 0;  // output offset of (idx with minor index 0)
  for (std::size_t flat = 0; flat < src.size(); ++flat) {
    const cplx v = src[flat] * scale;
    for (std::size_t m = 0; m < k; ++m) dst[base + m * minor_stride] = v;
    for (std::size_t ax = rank; ax-- > 0;) {
      const std::size_t step = widen[ax] ? k * out_strides[ax] : out_strides[ax];
      if (++idx[ax] < t.shape()[ax]) {
        base += step;
        break;
      }
      base -= (idx[ax] - 1) * step;
      idx[ax] = 0;
    }
  }
  return out;
}

ComplexTensor absorb_factor(const ComplexTensor& t, std::size_t phys_axis,
                            const ComplexTensor& f, std::size_t bond_axis) {
  if (f.rank() != 3) throw ValidationError("gate factor must have three axes");
  if (phys_axis == bond_axis || bond_axis >= t.rank()) {
    throw ValidationError("absorb_factor: bad axes");
  }
  const std::size_t k = f.dim(2);
  const std::array<std::size_t, 1> fa{1};
  const std::array<std::size_t, 1> ta{phys_axis};
  // Axes of the product: (out, bond, t axes without phys_axis).
  const ComplexTensor prod = contract(f, fa, t, ta);
  std::vector<std::size_t> perm;
  Shape out_shape;
  for (std::size_t i = 0; i < t.rank(); ++i) {
    if (i == phys_axis) {
      perm.push_back(0);
      out_shape.push_back(f.dim(0));
      continue;
    }
    perm.push_back(2 + i - (i > phys_axis ? 1 : 0));
    if (i == bond_axis) {
      perm.push_back(1);
      out_shape.push_back(t.dim(i) * k);
    } else {
      out_shape.push_back(t.dim(i));
    }
  }
  return permute(prod, perm).reshaped(out_shape);
}

ComplexTensor transpose(const ComplexTensor& m) {
  const std::array<std::size_t, 2> perm{1, 0};
  return permute(m, perm);
}

double frobenius_distance(const ComplexTensor& a, const ComplexTensor& b) {
  if (a.shape() != b.shape()) throw ValidationError("shape mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::norm(a.data()[i] - b.data()[i]);
  return std::sqrt(sum);
}

double isometry_defect(const ComplexTensor& m) {
  const ComplexTensor g = matmul(adjoint(m), m);
  double worst = 0.0;
  for (std::size_t r = 0; r < g.rows(); ++r) {
    for (std::size_t c = 0; c < g.cols(); ++c) {
      const cplx expected = r == c ? cplx(1.0) : cplx(0.0);
      worst = std::max(worst, std::abs(g(r, c) - expected));
    }
  }
  return worst;
}

}  // namespace ttnsim
