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
#include <string>
#include <vector>

#include "ttnsim/circuit.hpp"
#include "ttnsim/linalg.hpp"
#include "ttnsim/tensor.hpp"
#include "ttnsim/topology.hpp"

namespace ttnsim {

inline constexpr std::size_t kDefaultMemoryCap = std::size_t{1} << 31;
inline constexpr int kDefaultContractCap = 20;

/// How singular values are pruned during orthonormalization. sigma_rel
/// drops values below sigma_rel * sigma_1; cap keeps at most that many.
struct TruncationPolicy {
  double sigma_rel = 0.0;
  std::optional<std::size_t> cap;

  static TruncationPolicy exact() { return {}; }
  static TruncationPolicy threshold(double s) { return {s, std::nullopt}; }
  static TruncationPolicy capped(std::size_t d) { return {0.0, d}; }
  static TruncationPolicy both(double s, std::size_t d) { return {s, d}; }

  bool is_exact() const { return sigma_rel == 0.0 && !cap; }
  void validate() const;
  SvdOptions svd_options() const { return {sigma_rel, cap}; }
};

/// One tree edge, identified by the parent node and the child's position.
struct EdgeDim {
  int parent = -1;
  int slot = -1;
  int child = -1;
  int level = 0;
  std::size_t dim = 0;
};

/// Shared by the TTN and MPS engines.
struct NetworkMetrics {
  std::size_t d_max_observed = 0;  // largest axis over all tensors
  std::size_t m_entries = 0;       // total stored complex entries
  std::vector<EdgeDim> edges;

  std::size_t max_bond() const;  // largest virtual edge only
};

/// Running record of what the sweeps discarded.
struct SweepStats {
  std::size_t truncation_events = 0;  // SVDs that dropped a non-negligible value
  double discarded_weight = 0.0;      // summed squared discarded values
};

/// Tree tensor network statevector. Leaf tensors have axes (physical, parent),
/// internal tensors (child_1, ..., child_m, parent); the root's parent axis
/// has dimension 1. Node ids follow FlatTree (pre-order).
class TtnState {
 public:
  TtnState(const TreeTopology& topology, const std::vector<int>& bits);

  const TreeTopology& topology() const { return topology_; }
  const FlatTree& tree() const { return tree_; }
  int num_qubits() const { return tree_.num_qubits(); }
  const ComplexTensor& tensor(int node) const { return tensors_[node]; }
  const SweepStats& stats() const { return stats_; }

  void set_memory_cap(std::size_t entries) { memory_cap_ = entries; }
  std::size_t memory_cap() const { return memory_cap_; }

  void apply_single_qubit(const Gate& g);
  /// Gate splitting, leaf absorption and threading, without any sweep.
  /// Leaves the state exactly G|psi> but not canonical at the leaves.
  void thread_two_qubit(const Gate& g);
  void apply_two_qubit(const Gate& g, const TruncationPolicy& policy);
  /// Dispatches on gate arity.
  void apply(const Gate& g, const TruncationPolicy& policy);

  /// Bottom-up QR sweep towards the root, then a pass that walks the
  /// orthogonality center through the tree, applying the policy to the true
  /// Schmidt coefficients of every edge and dropping numerically zero ones.
  void orthonormalize(const TruncationPolicy& policy);

  std::vector<cplx> contract_to_statevector(int max_qubits = kDefaultContractCap) const;

  NetworkMetrics metrics() const;

  /// Largest deviation from the isometry condition over downstream axes.
  /// The root counts as an isometry onto its trivial parent axis, so it
  /// measures |norm^2 - 1|. With include_leaves false only internal nodes
  /// are inspected.
  double canonical_defect(bool include_leaves = true) const;

  /// Exact norm by contracting the network with its conjugate.
  double norm() const;

  /// Per-node shapes and edge dimensions as a JSON document.
  std::string dump() const;

 private:
  void sweep(const std::vector<bool>& dirty);
  void normalize_root();
  void truncate_from_root(const std::vector<bool>& region, const TruncationPolicy& policy);
  void descend(int node, const std::vector<bool>& region, const SvdOptions& options);

  TreeTopology topology_;
  FlatTree tree_;
  std::vector<ComplexTensor> tensors_;
  std::size_t memory_cap_ = kDefaultMemoryCap;
  SweepStats stats_;
};

TtnState init_basis_state(const TreeTopology& topology, const std::vector<int>& bits);

/// Runs a whole circuit from |0...0> (or the given bits).
TtnState simulate_ttn(const Circuit& c, const TreeTopology& topology,
                      const TruncationPolicy& policy, std::vector<int> bits = {});

}  // namespace ttnsim
