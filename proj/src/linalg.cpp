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

#include "ttnsim/linalg.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "ttnsim/errors.hpp"

namespace ttnsim {

namespace {

lapack_complex_double* as_lapack(cplx* p) {
  return reinterpret_cast<lapack_complex_double*>(p);
}

void check_matrix(const ComplexTensor& m, const char* who) {
  if (m.rank() != 2) throw ValidationError(std::string(who) + " needs a matrix");
  for (const cplx& z : m.data()) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw NumericalError(std::string(who) + ": non-finite matrix entry");
    }
  }
}

struct RawSvd {
  std::vector<cplx> u;
  std::vector<double> s;
  std::vector<cplx> vt;
};

// QR-iteration driver only: the divide-and-conquer routine of the bundled
// OpenBLAS returns non-orthonormal vectors from about 255 columns upward.
RawSvd raw_svd(const ComplexTensor& m) {
  const auto p = static_cast<lapack_int>(m.rows());
  const auto q = static_cast<lapack_int>(m.cols());
  const lapack_int k = std::min(p, q);
  RawSvd out;
  out.s.resize(k);
  out.u.resize(static_cast<std::size_t>(p) * k);
  out.vt.resize(static_cast<std::size_t>(k) * q);

  std::vector<cplx> a(m.data().begin(), m.data().end());
  std::vector<double> superb(std::max<lapack_int>(1, k - 1));
  const lapack_int info =
      LAPACKE_zgesvd(LAPACK_ROW_MAJOR, 'S', 'S', p, q, as_lapack(a.data()), q, out.s.data(),
                     as_lapack(out.u.data()), k, as_lapack(out.vt.data()), q, superb.data());
  if (info < 0) throw NumericalError("zgesvd: illegal argument " + std::to_string(-info));
  if (info > 0) {
    throw NumericalError("SVD failed to converge on a " + std::to_string(p) + "x" +
                         std::to_string(q) + " matrix");
  }
  return out;
}

}  // namespace

SvdFactors svd_econ(const ComplexTensor& m, const SvdOptions& options) {
  check_matrix(m, "svd_econ");
  if (!(options.threshold >= 0.0)) throw ValidationError("svd threshold must be >= 0");
  if (options.max_rank && *options.max_rank == 0) {
    throw ValidationError("svd max_rank must be positive");
  }
  RawSvd raw = raw_svd(m);
  const std::size_t p = m.rows();
  const std::size_t q = m.cols();
  const std::size_t full = raw.s.size();

  const double sigma1 = raw.s.empty() ? 0.0 : raw.s[0];
  const double zero_cut = kNumericalZero * sigma1;
  const double cut = options.threshold * sigma1;
  std::size_t nonzero = 0;
  while (nonzero < full && raw.s[nonzero] > zero_cut) ++nonzero;
  std::size_t keep = 0;
  while (keep < nonzero && !(raw.s[keep] < cut)) ++keep;
  if (options.max_rank) keep = std::min(keep, *options.max_rank);
  keep = std::max<std::size_t>(keep, 1);

  SvdFactors f;
  f.full_rank = full;
  f.truncated = nonzero > keep ? nonzero - keep : 0;
  for (std::size_t i = keep; i < full; ++i) {
    f.discarded_sum += raw.s[i];
    f.discarded_norm2 += raw.s[i] * raw.s[i];
  }
  f.s.assign(raw.s.begin(), raw.s.begin() + keep);
  f.u = ComplexTensor({p, keep});
  for (std::size_t r = 0; r < p; ++r) {
    for (std::size_t c = 0; c < keep; ++c) f.u(r, c) = raw.u[r * full + c];
  }
  f.v_dag = ComplexTensor({keep, q});
  std::copy(raw.vt.begin(), raw.vt.begin() + keep * q, f.v_dag.data().begin());
  return f;
}

std::vector<double> singular_values(const ComplexTensor& m) {
  check_matrix(m, "singular_values");
  return raw_svd(m).s;
}

QrFactors qr_econ(const ComplexTensor& m) {
  check_matrix(m, "qr_econ");
  const auto p = static_cast<lapack_int>(m.rows());
  const auto q = static_cast<lapack_int>(m.cols());
  const lapack_int k = std::min(p, q);
  std::vector<cplx> a(m.data().begin(), m.data().end());
  std::vector<cplx> tau(k);
  lapack_int info =
      LAPACKE_zgeqrf(LAPACK_ROW_MAJOR, p, q, as_lapack(a.data()), q, as_lapack(tau.data()));
  if (info != 0) throw NumericalError("zgeqrf failed with info " + std::to_string(info));

  QrFactors f;
  f.r = ComplexTensor({static_cast<std::size_t>(k), static_cast<std::size_t>(q)});
  for (lapack_int r = 0; r < k; ++r) {
    for (lapack_int c = r; c < q; ++c) f.r(r, c) = a[r * q + c];
  }
  // zungqr wants the reflectors in a p x k block.
  std::vector<cplx> qmat(static_cast<std::size_t>(p) * k);
  for (lapack_int r = 0; r < p; ++r) {
    for (lapack_int c = 0; c < k; ++c) qmat[r * k + c] = a[r * q + c];
  }
  info = LAPACKE_zungqr(LAPACK_ROW_MAJOR, p, k, k, as_lapack(qmat.data()), k,
                        as_lapack(tau.data()));
  if (info != 0) throw NumericalError("zungqr failed with info " + std::to_string(info));
  f.q = ComplexTensor({static_cast<std::size_t>(p), static_cast<std::size_t>(k)},
                      std::move(qmat));
  return f;
}

ComplexTensor reconstruct(const SvdFactors& f) {
  ComplexTensor us = f.u;
  for (std::size_t r = 0; r < us.rows(); ++r) {
    for (std::size_t c = 0; c < us.cols(); ++c) us(r, c) *= f.s[c];
  }
  return matmul(us, f.v_dag);
}

}  // namespace ttnsim
