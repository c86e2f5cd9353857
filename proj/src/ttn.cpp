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

#include "ttnsim/ttn.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <json.hpp>
#include <numeric>

#include "ttnsim/errors.hpp"
#include "ttnsim/gates.hpp"

namespace ttnsim {

namespace {

// Node tensor as a matrix: downstream axes x parent axis.
ComplexTensor as_node_matrix(const ComplexTensor& t) {
  const std::size_t e = t.shape().back();
  return t.reshaped({t.size() / e, e});
}

SvdFactors factorize(const ComplexTensor& m, const SvdOptions& options, int node) {
  try {
    return svd_econ(m, options);
  } catch (const NumericalError& e) {
    throw NumericalError(std::string(e.what()) + " (tree node " + std::to_string(node) + ")",
                         node);
  }
}

QrFactors orthogonalize(const ComplexTensor& m, int node) {
  try {
    return qr_econ(m);
  } catch (const NumericalError& e) {
    throw NumericalError(std::string(e.what()) + " (tree node " + std::to_string(node) + ")",
                         node);
  }
}

}  // namespace

void TruncationPolicy::validate() const {
  if (!(sigma_rel >= 0.0 && sigma_rel < 1.0)) {
    throw ValidationError("relative threshold must lie in [0, 1)");
  }
  if (cap && *cap < 1) throw ValidationError("bond cap must be >= 1");
}

std::size_t NetworkMetrics::max_bond() const {
  std::size_t best = 1;
  for (const EdgeDim& e : edges) best = std::max(best, e.dim);
  return best;
}

TtnState::TtnState(const TreeTopology& topology, const std::vector<int>& bits)
    : topology_(topology), tree_(topology) {
  if (static_cast<int>(bits.size()) != tree_.num_qubits()) {
    throw ValidationError("basis state needs one bit per qubit");
  }
  tensors_.resize(tree_.size());
  for (int id = 0; id < tree_.size(); ++id) {
    const FlatNode& n = tree_.node(id);
    if (n.is_leaf()) {
      const int b = bits[n.qubit];
      if (b != 0 && b != 1) throw ValidationError("basis bits must be 0 or 1");
      tensors_[id] = ComplexTensor({2, 1}, {cplx(1.0 - b), cplx(b)});
    } else {
      tensors_[id] = ComplexTensor(Shape(n.children.size() + 1, 1), {cplx(1.0)});
    }
  }
}

TtnState init_basis_state(const TreeTopology& topology, const std::vector<int>& bits) {
  return TtnState(topology, bits);
}

void TtnState::apply_single_qubit(const Gate& g) {
  if (g.arity() != 1) throw ValidationError("expected a single-qubit gate");
  if (g.qubits[0] >= num_qubits()) throw ValidationError("gate qubit out of range");
  const int leaf = tree_.leaf_of(g.qubits[0]);
  tensors_[leaf] = apply_to_axis(g.matrix, tensors_[leaf], 0);
}

void TtnState::thread_two_qubit(const Gate& g) {
  if (g.arity() != 2) throw ValidationError("expected a two-qubit gate");
  const int qa = g.qubits[0], qb = g.qubits[1];
  if (qa == qb) throw ValidationError("two-qubit gate needs distinct qubits");
  if (qa >= num_qubits() || qb >= num_qubits()) throw ValidationError("gate qubit out of range");

  const GateSplit split = split_gate(g);
  const std::size_t k = static_cast<std::size_t>(split.k);
  const FlatTree::Path path = tree_.path(tree_.leaf_of(qa), tree_.leaf_of(qb));

  // Every touched tensor grows: leaves by k, the rest by k^2.
  std::size_t total = 0;
  for (const auto& t : tensors_) total += t.size();
  std::size_t growth = 0;
  auto grow = [&](int node, std::size_t factor) {
    growth += tensors_[node].size() * (factor - 1);
  };
  for (const auto* side : {&path.from_a, &path.from_b}) {
    for (std::size_t i = 0; i < side->size(); ++i) grow((*side)[i], i == 0 ? k : k * k);
  }
  grow(path.turning, k * k);
  if (total + growth > memory_cap_) {
    throw MemoryCapExceeded("threading would need " + std::to_string(total + growth) +
                            " entries, cap is " + std::to_string(memory_cap_));
  }

  auto thread_side = [&](const std::vector<int>& side, const ComplexTensor& factor) {
    tensors_[side[0]] = absorb_factor(tensors_[side[0]], 0, factor, 1);
    for (std::size_t i = 1; i < side.size(); ++i) {
      ComplexTensor& t = tensors_[side[i]];
      const std::array<std::size_t, 2> axes{
          static_cast<std::size_t>(tree_.node(side[i - 1]).slot), t.rank() - 1};
      t = widen_diagonal(t, axes, k, 1.0);
    }
  };
  thread_side(path.from_a, split.left);
  thread_side(path.from_b, split.right);

  ComplexTensor& turn = tensors_[path.turning];
  const std::array<std::size_t, 2> axes{
      static_cast<std::size_t>(tree_.node(path.from_a.back()).slot),
      static_cast<std::size_t>(tree_.node(path.from_b.back()).slot)};
  turn = widen_diagonal(turn, axes, k, 1.0 / std::sqrt(static_cast<double>(k)));
}

void TtnState::apply_two_qubit(const Gate& g, const TruncationPolicy& policy) {
  policy.validate();
  thread_two_qubit(g);
  const FlatTree::Path path = tree_.path(tree_.leaf_of(g.qubits[0]), tree_.leaf_of(g.qubits[1]));
  std::vector<bool> region(tree_.size(), false);
  for (int n : path.from_a) region[n] = true;
  for (int n : path.from_b) region[n] = true;
  for (int n = path.turning; n >= 0; n = tree_.node(n).parent) region[n] = true;
  sweep(region);
  truncate_from_root(region, policy);
}

void TtnState::apply(const Gate& g, const TruncationPolicy& policy) {
  if (g.arity() == 1) {
    apply_single_qubit(g);
  } else {
    apply_two_qubit(g, policy);
  }
}

void TtnState::orthonormalize(const TruncationPolicy& policy) {
  policy.validate();
  const std::vector<bool> all(tree_.size(), true);
  sweep(all);
  truncate_from_root(all, policy);
}

void TtnState::sweep(const std::vector<bool>& initial) {
  std::vector<bool> dirty = initial;
  for (int id : tree_.post_order()) {
    if (!dirty[id] || id == tree_.root()) continue;
    const FlatNode& n = tree_.node(id);
    ComplexTensor& t = tensors_[id];
    const QrFactors f = orthogonalize(as_node_matrix(t), id);
    Shape shape = t.shape();
    shape.back() = f.q.cols();
    t = f.q.reshaped(shape);
    tensors_[n.parent] = apply_to_axis(f.r, tensors_[n.parent], n.slot);
    dirty[n.parent] = true;
  }
  normalize_root();
}

void TtnState::normalize_root() {
  ComplexTensor& root = tensors_[tree_.root()];
  const double nrm = root.norm();
  if (!(nrm > 0.0) || !std::isfinite(nrm)) {
    throw NumericalError("state norm vanished during orthonormalization", tree_.root());
  }
  root = root.scaled(1.0 / nrm);
}

void TtnState::truncate_from_root(const std::vector<bool>& region,
                                  const TruncationPolicy& policy) {
  descend(tree_.root(), region, policy.svd_options());
  normalize_root();
}

// `node` holds the orthogonality center: every other tensor is an isometry
// pointing towards it, so the singular values across each child edge are the
// Schmidt coefficients of the state. The center moves into each region child,
// the edge is truncated there, and the center comes back.
void TtnState::descend(int node, const std::vector<bool>& region, const SvdOptions& options) {
  const FlatNode& n = tree_.node(node);
  for (std::size_t j = 0; j < n.children.size(); ++j) {
    const int child = n.children[j];
    if (!region[child]) continue;
    ComplexTensor& p = tensors_[node];
    std::vector<std::size_t> rest;
    Shape rest_shape;
    for (std::size_t a = 0; a < p.rank(); ++a) {
      if (a == j) continue;
      rest.push_back(a);
      rest_shape.push_back(p.dim(a));
    }
    const std::array<std::size_t, 1> row{j};
    const SvdFactors down = factorize(merge_axes(p, row, rest), options, node);
    if (down.truncated > 0) {
      ++stats_.truncation_events;
      stats_.discarded_weight += down.discarded_norm2;
    }
    // Parent keeps V^dagger with the edge axis moved back to position j.
    rest_shape.insert(rest_shape.begin(), down.rank());
    std::vector<std::size_t> perm;
    for (std::size_t a = 1; a <= j; ++a) perm.push_back(a);
    perm.push_back(0);
    for (std::size_t a = j + 1; a < p.rank(); ++a) perm.push_back(a);
    p = permute(down.v_dag.reshaped(rest_shape), perm);
    ComplexTensor us = down.u;
    for (std::size_t r = 0; r < us.rows(); ++r) {
      for (std::size_t c = 0; c < us.cols(); ++c) us(r, c) *= down.s[c];
    }
    ComplexTensor& x = tensors_[child];
    x = apply_to_axis(transpose(us), x, x.rank() - 1);

    descend(child, region, options);

    const QrFactors up = orthogonalize(as_node_matrix(x), child);
    Shape shape = x.shape();
    shape.back() = up.q.cols();
    x = up.q.reshaped(shape);
    tensors_[node] = apply_to_axis(up.r, tensors_[node], j);
  }
}

std::vector<cplx> TtnState::contract_to_statevector(int max_qubits) const {
  const int n = num_qubits();
  if (n > max_qubits) {
    throw ValidationError("refusing to contract " + std::to_string(n) +
                          " qubits; cap is " + std::to_string(max_qubits));
  }
  // Returns the subtree as a (2^leaves, parent) matrix in leaf order.
  std::function<ComplexTensor(int)> collapse = [&](int id) {
    const FlatNode& node = tree_.node(id);
    if (node.is_leaf()) return tensors_[id];
    ComplexTensor r = tensors_[id];
    std::size_t rows = 1;
    for (std::size_t j = 0; j < node.children.size(); ++j) {
      const ComplexTensor sub = collapse(node.children[j]);
      r = apply_to_axis(sub, r, j);
      rows *= sub.rows();
    }
    return r.reshaped({rows, r.shape().back()});
  };
  const ComplexTensor flat = collapse(tree_.root());

  const std::vector<int> order = topology_.leaf_order();
  std::vector<std::size_t> perm(n);
  for (int pos = 0; pos < n; ++pos) perm[order[pos]] = static_cast<std::size_t>(pos);
  const ComplexTensor amps = permute(flat.reshaped(Shape(n, 2)), perm);
  return {amps.data().begin(), amps.data().end()};
}

NetworkMetrics TtnState::metrics() const {
  NetworkMetrics m;
  for (const auto& t : tensors_) {
    m.m_entries += t.size();
    for (std::size_t d : t.shape()) m.d_max_observed = std::max(m.d_max_observed, d);
  }
  for (int id = 0; id < tree_.size(); ++id) {
    const FlatNode& n = tree_.node(id);
    if (n.parent < 0) continue;
    m.edges.push_back({n.parent, n.slot, id, tree_.edge_level(id), tensors_[id].shape().back()});
  }
  return m;
}

double TtnState::canonical_defect(bool include_leaves) const {
  double worst = 0.0;
  for (int id = 0; id < tree_.size(); ++id) {
    const bool root = id == tree_.root();
    if (!root && !include_leaves && tree_.node(id).is_leaf()) continue;
    worst = std::max(worst, isometry_defect(as_node_matrix(tensors_[id])));
  }
  return worst;
}

double TtnState::norm() const {
  // env(id) = sum over the subtree of conj(T) T, a Hermitian parent x parent matrix.
  std::function<ComplexTensor(int)> env = [&](int id) {
    const FlatNode& node = tree_.node(id);
    ComplexTensor x = tensors_[id];
    for (std::size_t j = 0; j < node.children.size(); ++j) {
      x = apply_to_axis(env(node.children[j]), x, j);
    }
    return matmul(adjoint(as_node_matrix(tensors_[id])), as_node_matrix(x));
  };
  return std::sqrt(std::max(0.0, env(tree_.root())(0, 0).real()));
}

std::string TtnState::dump() const {
  nlohmann::json doc;
  doc["num_qubits"] = num_qubits();
  nlohmann::json nodes = nlohmann::json::array();
  for (int id = 0; id < tree_.size(); ++id) {
    const FlatNode& n = tree_.node(id);
    nlohmann::json node{{"id", id}, {"parent", n.parent}, {"shape", tensors_[id].shape()}};
    if (n.is_leaf()) node["qubit"] = n.qubit;
    nodes.push_back(node);
  }
  doc["nodes"] = nodes;
  nlohmann::json edges = nlohmann::json::array();
  for (const EdgeDim& e : metrics().edges) {
    edges.push_back({{"parent", e.parent}, {"slot", e.slot}, {"level", e.level}, {"dim", e.dim}});
  }
  doc["edges"] = edges;
  return doc.dump(2) + "\n";
}

TtnState simulate_ttn(const Circuit& c, const TreeTopology& topology,
                      const TruncationPolicy& policy, std::vector<int> bits) {
  if (bits.empty()) bits.assign(c.num_qubits(), 0);
  if (topology.num_qubits() != c.num_qubits()) {
    throw ValidationError("topology and circuit disagree on the qubit count");
  }
  TtnState state(topology, bits);
  for (const Gate& g : c.gates()) state.apply(g, policy);
  return state;
}

}  // namespace ttnsim
