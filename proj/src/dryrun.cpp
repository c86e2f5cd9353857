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

#include "ttnsim/dryrun.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <json.hpp>
#include <numbers>
#include <sstream>

#include "ttnsim/bounds.hpp"
#include "ttnsim/errors.hpp"
#include "ttnsim/gates.hpp"
#include "ttnsim/random.hpp"
#include "ttnsim/tree_search.hpp"

namespace ttnsim {

namespace {

// Symbolic network: nodes with incident legs and a routine that lists the
// virtual edges between the nodes holding two qubits.
class Ledger {
 public:
  Ledger(int num_nodes, std::vector<LedgerEdge> edges) : edges_(std::move(edges)) {
    incident_.resize(num_nodes);
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      incident_[edges_[e].lower].push_back(static_cast<int>(e));
      if (edges_[e].upper >= 0) incident_[edges_[e].upper].push_back(static_cast<int>(e));
    }
  }

  std::vector<LedgerEdge>& edges() { return edges_; }

  // Product of the other legs at `node`, skipping edge `skip`.
  std::uint64_t others(int node, int skip) const {
    std::uint64_t p = 1;
    for (int e : incident_[node]) {
      if (e != skip) p = sat_mul(p, edges_[e].dim);
    }
    return p;
  }

  void reduce_to_fixpoint() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t e = 0; e < edges_.size(); ++e) {
        LedgerEdge& edge = edges_[e];
        if (edge.physical) continue;
        const int id = static_cast<int>(e);
        const std::uint64_t bound = std::min(others(edge.lower, id), others(edge.upper, id));
        if (bound < edge.dim) {
          edge.dim = bound;
          changed = true;
        }
      }
    }
  }

  std::uint64_t entries() const {
    std::uint64_t total = 0;
    for (std::size_t n = 0; n < incident_.size(); ++n) {
      const std::uint64_t size = others(static_cast<int>(n), -1);
      total = total > UINT64_MAX - size ? UINT64_MAX : total + size;
    }
    return total;
  }

 private:
  std::vector<LedgerEdge> edges_;
  std::vector<std::vector<int>> incident_;
};

DryRunReport run(const Circuit& c, Ledger ledger,
                 const std::function<std::vector<int>(int, int)>& path_edges,
                 std::optional<std::uint64_t> cap) {
  DryRunReport report;
  report.d_max = cap;
  for (std::size_t gi = 0; gi < c.gates().size(); ++gi) {
    const Gate& g = c.gates()[gi];
    if (g.arity() != 2) continue;
    const int k = gate_rank(g);
    const std::vector<int> path = path_edges(g.qubits[0], g.qubits[1]);
    for (int e : path) {
      ledger.edges()[e].dim = sat_mul(ledger.edges()[e].dim, static_cast<std::uint64_t>(k));
    }
    ledger.reduce_to_fixpoint();
    if (cap) {
      bool clamped = false;
      for (std::size_t e = 0; e < ledger.edges().size(); ++e) {
        LedgerEdge& edge = ledger.edges()[e];
        if (!edge.physical && edge.dim > *cap) {
          report.cap_events.push_back({gi, static_cast<int>(e), edge.dim});
          edge.dim = *cap;
          clamped = true;
        }
      }
      if (clamped) ledger.reduce_to_fixpoint();
    }
    std::uint64_t largest = 1;
    for (const LedgerEdge& edge : ledger.edges()) {
      if (!edge.physical) largest = std::max(largest, edge.dim);
    }
    report.events.push_back({gi, k, static_cast<int>(path.size()), largest});
  }
  report.edges = ledger.edges();
  report.m_entries = ledger.entries();
  for (const LedgerEdge& edge : report.edges) {
    report.d_max_observed = std::max(report.d_max_observed, edge.dim);
    if (!edge.physical) report.max_bond = std::max(report.max_bond, edge.dim);
  }
  report.within_d_max = !cap || (report.cap_events.empty() && report.max_bond <= *cap);
  return report;
}

}  // namespace

DryRunReport dryrun_tree(const Circuit& c, const TreeTopology& t,
                         std::optional<std::uint64_t> cap) {
  if (t.num_qubits() != c.num_qubits()) {
    throw ValidationError("topology and circuit disagree on the qubit count");
  }
  const FlatTree tree(t);
  // Virtual edge of node n (n != root) is at index edge_of[n].
  std::vector<LedgerEdge> edges;
  std::vector<int> edge_of(tree.size(), -1);
  for (int n = 0; n < tree.size(); ++n) {
    const FlatNode& node = tree.node(n);
    if (node.is_leaf()) edges.push_back({n, -1, 0, true, 2});
    if (node.parent >= 0) {
      edge_of[n] = static_cast<int>(edges.size());
      edges.push_back({n, node.parent, tree.edge_level(n), false, 1});
    }
  }
  auto path_edges = [&](int qa, int qb) {
    const FlatTree::Path p = tree.path(tree.leaf_of(qa), tree.leaf_of(qb));
    std::vector<int> out;
    for (int n : p.from_a) out.push_back(edge_of[n]);
    for (int n : p.from_b) out.push_back(edge_of[n]);
    return out;
  };
  return run(c, Ledger(tree.size(), std::move(edges)), path_edges, cap);
}

DryRunReport dryrun_mps(const Circuit& c, std::vector<int> order,
                        std::optional<std::uint64_t> cap) {
  const int n = c.num_qubits();
  if (order.empty()) {
    order.resize(n);
    for (int i = 0; i < n; ++i) order[i] = i;
  }
  std::vector<int> site_of(n, -1);
  if (static_cast<int>(order.size()) != n) throw ValidationError("qubit order has wrong length");
  for (int s = 0; s < n; ++s) {
    if (order[s] < 0 || order[s] >= n || site_of[order[s]] != -1) {
      throw ValidationError("qubit order must be a permutation");
    }
    site_of[order[s]] = s;
  }
  std::vector<LedgerEdge> edges;
  for (int s = 0; s < n; ++s) edges.push_back({s, -1, 0, true, 2});
  for (int s = 0; s + 1 < n; ++s) edges.push_back({s, s + 1, 0, false, 1});
  auto path_edges = [&](int qa, int qb) {
    const int lo = std::min(site_of[qa], site_of[qb]);
    const int hi = std::max(site_of[qa], site_of[qb]);
    std::vector<int> out;
    for (int s = lo; s < hi; ++s) out.push_back(n + s);
    return out;
  };
  return run(c, Ledger(n, std::move(edges)), path_edges, cap);
}

std::string dryrun_to_json(const DryRunReport& r) {
  nlohmann::ordered_json doc;
  doc["d_max_observed"] = r.d_max_observed;
  doc["max_bond"] = r.max_bond;
  doc["m_entries"] = r.m_entries;
  if (r.d_max) doc["d_max"] = *r.d_max;
  doc["within_d_max"] = r.within_d_max;
  nlohmann::ordered_json edges = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < r.edges.size(); ++i) {
    const LedgerEdge& e = r.edges[i];
    edges.push_back({{"id", i},
                     {"kind", e.physical ? "physical" : "virtual"},
                     {"lower", e.lower},
                     {"upper", e.upper},
                     {"level", e.level},
                     {"dim", e.dim}});
  }
  doc["edges"] = edges;
  nlohmann::ordered_json events = nlohmann::ordered_json::array();
  for (const GateEvent& e : r.events) {
    events.push_back({{"gate", e.gate_index},
                      {"k", e.k},
                      {"path_length", e.path_length},
                      {"max_dim_after", e.max_dim_after}});
  }
  doc["gate_events"] = events;
  nlohmann::ordered_json caps = nlohmann::ordered_json::array();
  for (const CapEvent& e : r.cap_events) {
    caps.push_back({{"gate", e.gate_index}, {"edge", e.edge}, {"wanted", e.wanted}});
  }
  doc["cap_events"] = caps;
  return doc.dump(2) + "\n";
}

std::string dryrun_to_csv(const DryRunReport& r) {
  std::ostringstream out;
  out << "edge_id,kind,level,dim\n";
  for (std::size_t i = 0; i < r.edges.size(); ++i) {
    const LedgerEdge& e = r.edges[i];
    out << i << ',' << (e.physical ? "physical" : "virtual") << ',' << e.level << ',' << e.dim
        << '\n';
  }
  return out.str();
}

AdmissibilityReport admissible(const Circuit& c, const TreeTopology& t, std::uint64_t d_max) {
  if (d_max < 2) throw ValidationError("d_max must be >= 2");
  const FlatTree tree(t);
  AdmissibilityReport report;
  report.arity = std::max(2, t.max_arity());
  report.l_cluster = l_cluster(report.arity, static_cast<long long>(d_max));
  const double log2_d = std::log2(static_cast<double>(d_max));
  report.edge_crossing_bound = log2_d / 2.0;
  report.node_crossing_bound = (report.arity + 1) / 4.0 * log2_d;

  std::vector<int> edge_count(tree.size(), 0), node_count(tree.size(), 0);
  std::vector<std::uint64_t> product(tree.size(), 1);
  for (const Gate& g : c.gates()) {
    if (g.arity() != 2) continue;
    const auto k = static_cast<std::uint64_t>(gate_rank(g));
    const FlatTree::Path p = tree.path(tree.leaf_of(g.qubits[0]), tree.leaf_of(g.qubits[1]));
    for (const auto* side : {&p.from_a, &p.from_b}) {
      for (int n : *side) {
        ++edge_count[n];
        product[n] = sat_mul(product[n], k);
        if (!tree.node(n).is_leaf()) ++node_count[n];
      }
    }
    ++node_count[p.turning];
  }
  for (int n = 0; n < tree.size(); ++n) {
    const FlatNode& node = tree.node(n);
    if (node.parent >= 0) {
      EdgeCrossing e{n, tree.edge_level(n), edge_count[n], product[n],
                     node.height >= report.l_cluster, false};
      e.violates = e.restricted && e.rank_product > d_max;
      if (e.violates) {
        report.admissible = false;
        report.violating_edges.push_back(n);
      }
      report.edges.push_back(e);
    }
    if (!node.is_leaf()) {
      report.nodes.push_back({n, node_count[n], node_count[n] > report.node_crossing_bound});
    }
  }
  return report;
}

namespace {

constexpr std::uint64_t kTriangleSeed = 0x7472692d70617474ULL;

class TriangleBuilder {
 public:
  TriangleBuilder(int levels, int d_max) : levels_(levels), closed_(d_max == 64) {}

  // Builds the subtree of the given height starting at qubit `base`; returns
  // its ports, one qubit per slot.
  std::vector<int> build(int height, int base, std::vector<std::pair<int, int>>& links,
                         std::vector<TreeNodeSpec>& out) {
    const int slots = closed_ ? 3 : 2;
    if (height == 2) {
      std::vector<TreeNodeSpec> groups;
      for (int g = 0; g < 3; ++g) {
        groups.push_back(TreeNodeSpec::internal({TreeNodeSpec::leaf(base + 3 * g),
                                                 TreeNodeSpec::leaf(base + 3 * g + 1),
                                                 TreeNodeSpec::leaf(base + 3 * g + 2)}));
      }
      out.push_back(TreeNodeSpec::internal(std::move(groups)));
      clusters_.push_back(base);
      std::vector<int> ports;
      for (int s = 0; s < slots; ++s) ports.push_back(base + 4 * s);
      return ports;
    }
    const int span = 9 * ipow(3, height - 3);
    std::vector<std::vector<int>> child_ports;
    std::vector<TreeNodeSpec> children;
    for (int i = 0; i < 3; ++i) {
      child_ports.push_back(build(height - 1, base + i * span, links, children));
    }
    out.push_back(TreeNodeSpec::internal(std::move(children)));
    std::vector<int> ports;
    if (closed_) {
      // Child i links to (i+1)%3 through slot 1 and to (i+2)%3 through slot 2.
      for (int i = 0; i < 3; ++i) links.emplace_back(child_ports[i][1], child_ports[(i + 1) % 3][2]);
      for (int s = 0; s < 3; ++s) ports.push_back(child_ports[s][0]);
    } else {
      links.emplace_back(child_ports[0][1], child_ports[1][0]);
      links.emplace_back(child_ports[1][1], child_ports[2][0]);
      ports = {child_ports[0][0], child_ports[2][1]};
    }
    return ports;
  }

  TrianglePattern finish() {
    std::vector<std::pair<int, int>> links;
    std::vector<TreeNodeSpec> root;
    build(levels_ + 1, 0, links, root);
    const int n = 9 * ipow(3, levels_ - 1);
    Circuit c(n);
    std::uint64_t index = 0;
    auto add = [&](int a, int b) {
      Rng rng = Rng::split(kTriangleSeed, index++);
      c.add(gates::fsim(a, b, rng.uniform(0.2, 1.3),
                        rng.uniform(0.2, 2.0 * std::numbers::pi - 0.2)));
    };
    for (int base : clusters_) {
      for (int a = 0; a < 9; ++a)
        for (int b = a + 1; b < 9; ++b) add(base + a, base + b);
    }
    for (const auto& [a, b] : links) add(a, b);
    return TrianglePattern{std::move(c), TreeTopology(std::move(root.front()))};
  }

 private:
  static int ipow(int b, int e) {
    int r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
  }

  int levels_;
  bool closed_;
  std::vector<int> clusters_;
};

}  // namespace

TrianglePattern gen_triangle_pattern(int levels, int d_max) {
  if (levels < 1) throw ValidationError("triangle pattern needs levels >= 1");
  if (levels > 6) throw ValidationError("triangle pattern supports at most 6 levels");
  if (d_max != 16 && d_max != 64) throw ValidationError("triangle pattern d_max must be 16 or 64");
  return TriangleBuilder(levels, d_max).finish();
}

}  // namespace ttnsim
