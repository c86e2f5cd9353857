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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ttnsim/circuit.hpp"
#include "ttnsim/topology.hpp"

namespace ttnsim {

/// One leg of the symbolic network. Physical legs hang off a single node and
/// stay at dimension 2. For trees, `lower` is the child node of a virtual edge
/// (or the leaf owning a physical leg) and `upper` its parent; for MPS chains
/// `lower` and `upper` are neighboring sites.
struct LedgerEdge {
  int lower = -1;
  int upper = -1;  // -1 for physical legs
  int level = 0;
  bool physical = false;
  std::uint64_t dim = 1;
};

struct GateEvent {
  std::size_t gate_index = 0;
  int k = 1;
  int path_length = 0;  // virtual edges threaded
  std::uint64_t max_dim_after = 1;
};

struct CapEvent {
  std::size_t gate_index = 0;
  int edge = -1;
  std::uint64_t wanted = 0;
};

struct DryRunReport {
  std::vector<LedgerEdge> edges;
  std::uint64_t d_max_observed = 0;  // over all legs, physical included
  std::uint64_t max_bond = 1;        // over virtual edges
  std::uint64_t m_entries = 0;
  std::vector<GateEvent> events;
  std::vector<CapEvent> cap_events;
  std::optional<std::uint64_t> d_max;  // requested ceiling, if any
  bool within_d_max = true;            // no edge ever needed more than d_max
};

/// Symbolic simulation on a tree: every gate multiplies the edges on its path
/// by the gate's Schmidt rank, then each virtual edge is reduced to the
/// product of the other legs at either endpoint until nothing changes. With a
/// cap, edges are clamped and the clamp is recorded.
DryRunReport dryrun_tree(const Circuit& c, const TreeTopology& t,
                         std::optional<std::uint64_t> cap = std::nullopt);

/// Same on an MPS chain; `order[s]` is the qubit at site s (empty = identity).
DryRunReport dryrun_mps(const Circuit& c, std::vector<int> order = {},
                        std::optional<std::uint64_t> cap = std::nullopt);

std::string dryrun_to_json(const DryRunReport& r);
/// Header "edge_id,kind,level,dim", one row per ledger edge.
std::string dryrun_to_csv(const DryRunReport& r);

struct EdgeCrossing {
  int child = -1;  // node below the edge
  int level = 0;
  int crossings = 0;
  std::uint64_t rank_product = 1;
  bool restricted = false;  // above a cluster, so the product must fit d_max
  bool violates = false;
};

struct NodeCrossing {
  int node = -1;
  int crossings = 0;
  bool exceeds_bound = false;
};

struct AdmissibilityReport {
  bool admissible = true;
  int l_cluster = 0;
  int arity = 2;
  double edge_crossing_bound = 0.0;  // log4(d_max)
  double node_crossing_bound = 0.0;  // (m + 1)/4 * log2(d_max)
  std::vector<EdgeCrossing> edges;
  std::vector<NodeCrossing> nodes;   // internal nodes only
  std::vector<int> violating_edges;  // child ids of edges over the limit
};

/// Checks that the gates crossing every edge above the cluster level have a
/// rank product within d_max.
AdmissibilityReport admissible(const Circuit& c, const TreeTopology& t, std::uint64_t d_max);

struct TrianglePattern {
  Circuit circuit;
  TreeTopology topology;
};

/// Recursive triangle pattern on 9 * 3^(levels-1) qubits with its perfect
/// 3-ary tree. Each 9-qubit cluster gets a generic gate on every qubit pair.
/// Above the clusters, sibling subtrees are linked pairwise through distinct
/// port qubits: a path of two links for d_max 16, a closed triangle of three
/// links for d_max 64.
TrianglePattern gen_triangle_pattern(int levels, int d_max);

}  // namespace ttnsim
