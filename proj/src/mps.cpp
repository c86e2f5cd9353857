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

#include "ttnsim/mps.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <json.hpp>

#include "ttnsim/errors.hpp"
#include "ttnsim/gates.hpp"
#include "ttnsim/linalg.hpp"

namespace ttnsim {

namespace {

SvdFactors factorize(const ComplexTensor& m, const SvdOptions& options, int site) {
  try {
    return svd_econ(m, options);
  } catch (const NumericalError& e) {
    throw NumericalError(std::string(e.what()) + " (MPS site " + std::to_string(site) + ")",
                         site);
  }
}

}  // namespace

MpsState::MpsState(int num_qubits, const std::vector<int>& bits, std::vector<int> order)
    : order_(std::move(order)) {
  if (num_qubits < 1) throw ValidationError("MPS needs at least one qubit");
  if (static_cast<int>(bits.size()) != num_qubits) {
    throw ValidationError("basis state needs one bit per qubit");
  }
  if (order_.empty()) {
    order_.resize(num_qubits);
    for (int i = 0; i < num_qubits; ++i) order_[i] = i;
  }
  if (static_cast<int>(order_.size()) != num_qubits) {
    throw ValidationError("qubit order must list every qubit once");
  }
  site_of_.assign(num_qubits, -1);
  for (int s = 0; s < num_qubits; ++s) {
    const int q = order_[s];
    if (q < 0 || q >= num_qubits || site_of_[q] != -1) {
      throw ValidationError("qubit order must be a permutation");
    }
    site_of_[q] = s;
  }
  for (int s = 0; s < num_qubits; ++s) {
    const int b = bits[order_[s]];
    if (b != 0 && b != 1) throw ValidationError("basis bits must be 0 or 1");
    sites_.emplace_back(Shape{1, 2, 1}, std::vector<cplx>{cplx(1.0 - b), cplx(b)});
  }
}

MpsState mps_init(int num_qubits, const std::vector<int>& bits, std::vector<int> order) {
  return MpsState(num_qubits, bits, std::move(order));
}

void MpsState::apply_single_qubit(const Gate& g) {
  if (g.arity() != 1) throw ValidationError("expected a single-qubit gate");
  if (g.qubits[0] >= num_qubits()) throw ValidationError("gate qubit out of range");
  ComplexTensor& t = sites_[site_of_[g.qubits[0]]];
  t = apply_to_axis(g.matrix, t, 1);
}

void MpsState::thread_two_qubit(const Gate& g) {
  if (g.arity() != 2) throw ValidationError("expected a two-qubit gate");
  const int qa = g.qubits[0], qb = g.qubits[1];
  if (qa == qb) throw ValidationError("two-qubit gate needs distinct qubits");
  if (qa >= num_qubits() || qb >= num_qubits()) throw ValidationError("gate qubit out of range");

  const GateSplit split = split_gate(g);
  const std::size_t k = static_cast<std::size_t>(split.k);
  const int sa = site_of_[qa], sb = site_of_[qb];
  const int lo = std::min(sa, sb), hi = std::max(sa, sb);

  std::size_t total = 0, growth = 0;
  for (const auto& t : sites_) total += t.size();
  for (int s = lo; s <= hi; ++s) {
    growth += sites_[s].size() * ((s == lo || s == hi) ? k - 1 : k * k - 1);
  }
  if (total + growth > memory_cap_) {
    throw MemoryCapExceeded("threading would need " + std::to_string(total + growth) +
                            " entries, cap is " + std::to_string(memory_cap_));
  }

  const ComplexTensor& f_lo = sa < sb ? split.left : split.right;
  const ComplexTensor& f_hi = sa < sb ? split.right : split.left;
  sites_[lo] = absorb_factor(sites_[lo], 1, f_lo, 2).scaled(1.0 / std::sqrt(double(k)));
  sites_[hi] = absorb_factor(sites_[hi], 1, f_hi, 0);
  const std::array<std::size_t, 2> bonds{0, 2};
  for (int s = lo + 1; s < hi; ++s) sites_[s] = widen_diagonal(sites_[s], bonds, k, 1.0);
}

void MpsState::apply_two_qubit(const Gate& g, const TruncationPolicy& policy) {
  policy.validate();
  thread_two_qubit(g);
  orthonormalize(policy);
}

void MpsState::apply(const Gate& g, const TruncationPolicy& policy) {
  if (g.arity() == 1) {
    apply_single_qubit(g);
  } else {
    apply_two_qubit(g, policy);
  }
}

void MpsState::orthonormalize(const TruncationPolicy& policy) {
  policy.validate();
  const int n = num_qubits();
  for (int s = 0; s + 1 < n; ++s) {
    ComplexTensor& t = sites_[s];
    const std::size_t l = t.dim(0), r = t.dim(2);
    QrFactors f;
    try {
      f = qr_econ(t.reshaped({l * 2, r}));
    } catch (const NumericalError& e) {
      throw NumericalError(std::string(e.what()) + " (MPS site " + std::to_string(s) + ")", s);
    }
    t = f.q.reshaped({l, 2, f.q.cols()});
    sites_[s + 1] = apply_to_axis(f.r, sites_[s + 1], 0);
  }
  const SvdOptions options = policy.svd_options();
  for (int s = n - 1; s > 0; --s) {
    ComplexTensor& t = sites_[s];
    const std::size_t l = t.dim(0), r = t.dim(2);
    SvdFactors f = factorize(t.reshaped({l, 2 * r}), options, s);
    if (f.truncated > 0) {
      ++stats_.truncation_events;
      stats_.discarded_weight += f.discarded_norm2;
    }
    t = f.v_dag.reshaped({f.rank(), 2, r});
    for (std::size_t row = 0; row < l; ++row) {
      for (std::size_t i = 0; i < f.rank(); ++i) f.u(row, i) *= f.s[i];
    }
    sites_[s - 1] = apply_to_axis(transpose(f.u), sites_[s - 1], 2);
  }
  const double nrm = sites_[0].norm();
  if (!(nrm > 0.0) || !std::isfinite(nrm)) {
    throw NumericalError("MPS failed to normalize site 0", 0);
  }
  sites_[0] = sites_[0].scaled(1.0 / nrm);
}

std::vector<cplx> MpsState::contract_to_statevector(int max_qubits) const {
  const int n = num_qubits();
  if (n > max_qubits) {
    throw ValidationError("refusing to contract " + std::to_string(n) +
                          " qubits; cap is " + std::to_string(max_qubits));
  }
  // acc holds (2^s, bond) for the sites contracted so far.
  ComplexTensor acc = sites_[0].reshaped({2, sites_[0].dim(2)});
  for (int s = 1; s < n; ++s) {
    const ComplexTensor& t = sites_[s];
    const ComplexTensor step = matmul(acc, t.reshaped({t.dim(0), 2 * t.dim(2)}));
    acc = step.reshaped({acc.rows() * 2, t.dim(2)});
  }
  std::vector<std::size_t> perm(n);
  for (int q = 0; q < n; ++q) perm[q] = static_cast<std::size_t>(site_of_[q]);
  const ComplexTensor amps = permute(acc.reshaped(Shape(n, 2)), perm);
  return {amps.data().begin(), amps.data().end()};
}

NetworkMetrics MpsState::metrics() const {
  NetworkMetrics m;
  for (const auto& t : sites_) {
    m.m_entries += t.size();
    for (std::size_t d : t.shape()) m.d_max_observed = std::max(m.d_max_observed, d);
  }
  for (int s = 0; s + 1 < num_qubits(); ++s) {
    m.edges.push_back({s, 0, s + 1, 0, sites_[s].dim(2)});
  }
  return m;
}

double MpsState::canonical_defect() const {
  double worst = 0.0;
  for (int s = 0; s < num_qubits(); ++s) {
    const ComplexTensor& t = sites_[s];
    const ComplexTensor rows = t.reshaped({t.dim(0), 2 * t.dim(2)});
    // Right-canonical: rows orthonormal, i.e. the adjoint is an isometry.
    worst = std::max(worst, isometry_defect(adjoint(rows)));
  }
  return worst;
}

double MpsState::norm() const {
  // Left environment L (bond x bond), grown site by site.
  ComplexTensor env = ComplexTensor::identity(1);
  for (const auto& t : sites_) {
    const ComplexTensor moved = apply_to_axis(env, t, 0);
    env = matmul(adjoint(t.reshaped({t.dim(0) * 2, t.dim(2)})),
                 moved.reshaped({t.dim(0) * 2, t.dim(2)}));
  }
  return std::sqrt(std::max(0.0, env(0, 0).real()));
}

std::string MpsState::dump() const {
  nlohmann::json doc;
  doc["num_qubits"] = num_qubits();
  doc["order"] = order_;
  nlohmann::json sites = nlohmann::json::array();
  for (const auto& t : sites_) sites.push_back(t.shape());
  doc["sites"] = sites;
  return doc.dump(2) + "\n";
}

MpsState simulate_mps(const Circuit& c, const TruncationPolicy& policy, std::vector<int> order,
                      std::vector<int> bits) {
  if (bits.empty()) bits.assign(c.num_qubits(), 0);
  MpsState state(c.num_qubits(), bits, std::move(order));
  for (const Gate& g : c.gates()) state.apply(g, policy);
  return state;
}

}  // namespace ttnsim
