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

#include <algorithm>
#include <catch_amalgamated.hpp>
#include <chrono>
#include <map>
#include <numeric>
#include <sstream>

#include "test_support.hpp"
#include "ttnsim/dryrun.hpp"
#include "ttnsim/errors.hpp"
#include "ttnsim/gates.hpp"
#include "ttnsim/generators.hpp"
#include "ttnsim/mps.hpp"
#include "ttnsim/tree_search.hpp"
#include "ttnsim/ttn.hpp"

using namespace ttnsim;
using Catch::Matchers::WithinAbs;

namespace {

std::map<int, std::uint64_t> virtual_dims(const DryRunReport& r) {
  std::map<int, std::uint64_t> dims;
  for (const LedgerEdge& e : r.edges)
    if (!e.physical) dims[e.lower] = e.dim;
  return dims;
}

Circuit with_gate(const Circuit& c, const Gate& g) {
  Circuit out = c;
  out.add(g);
  return out;
}

}  // namespace

TEST_CASE("Bell pair on a two-leaf tree", "[dryrun]") {
  const TreeTopology t(TreeNodeSpec::internal({TreeNodeSpec::leaf(0), TreeNodeSpec::leaf(1)}));
  const DryRunReport r = dryrun_tree(testing::bell_circuit(), t);
  const auto dims = virtual_dims(r);
  REQUIRE(dims.size() == 2);
  for (const auto& [node, dim] : dims) CHECK(dim == 2);
  CHECK(r.max_bond == 2);
  CHECK(r.d_max_observed == 2);
  // Two 2x2 leaves and a 2x2x1 root.
  CHECK(r.m_entries == 4 + 4 + 4);
  REQUIRE(r.events.size() == 1);
  CHECK(r.events[0].k == 2);
  CHECK(r.events[0].path_length == 2);
  CHECK(r.cap_events.empty());
}

TEST_CASE("single-qubit gates leave the ledger alone", "[dryrun]") {
  Circuit c(3);
  c.add(gates::h(0));
  c.add(gates::t(2));
  const DryRunReport r = dryrun_tree(c, TreeTopology(TreeNodeSpec::internal(
                                            {TreeNodeSpec::leaf(0), TreeNodeSpec::leaf(1), TreeNodeSpec::leaf(2)})));
  CHECK(r.max_bond == 1);
  CHECK(r.events.empty());
}

TEST_CASE("tree-like circuit stays within sixteen", "[dryrun]") {
  const Circuit c = gen_treelike(4, 1);
  const TreeTopology t = find_tree_structure(c, 4);
  const DryRunReport r = dryrun_tree(c, t, 16);
  CHECK(r.max_bond <= 16);
  CHECK(r.cap_events.empty());
  CHECK(r.within_d_max);

  // Cross-check against the exact engine on the same instance.
  const TtnState s = simulate_ttn(c, t, TruncationPolicy::exact());
  const auto dims = virtual_dims(r);
  for (const EdgeDim& e : s.metrics().edges) CHECK(e.dim <= dims.at(e.child));
}

TEST_CASE("dry-run bounds the exact engine from above", "[dryrun][property]") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Circuit c = gen_random(10, 30 + static_cast<int>(seed % 20), 500 + seed);
    const TreeTopology t = find_tree_structure(c, 3);
    const auto dims = virtual_dims(dryrun_tree(c, t));
    const TtnState s = simulate_ttn(c, t, TruncationPolicy::exact());
    for (const EdgeDim& e : s.metrics().edges) CHECK(e.dim <= dims.at(e.child));

    if (seed % 10 == 0) {
      const DryRunReport chain = dryrun_mps(c);
      const MpsState m = simulate_mps(c, TruncationPolicy::exact());
      for (const EdgeDim& e : m.metrics().edges) {
        const auto it = std::find_if(chain.edges.begin(), chain.edges.end(), [&](const LedgerEdge& l) {
          return !l.physical && l.lower == e.parent;
        });
        REQUIRE(it != chain.edges.end());
        CHECK(e.dim <= it->dim);
      }
    }
  }
}

TEST_CASE("dry-run dims respect the cluster bound on perfect trees", "[dryrun][property]") {
  for (int arity : {2, 3}) {
    const TreeTopology t = TreeTopology::perfect(arity, 2);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const DryRunReport r = dryrun_tree(gen_random(t.num_qubits(), 150, seed), t);
      for (const LedgerEdge& e : r.edges) {
        if (e.physical) {
          CHECK(e.dim == 2);
          continue;
        }
        std::uint64_t exponent = 1;
        for (int l = 1; l < e.level; ++l) exponent *= arity;
        CHECK(e.dim <= (std::uint64_t{1} << exponent));
      }
    }
  }
}

TEST_CASE("adding a gate never lowers a dry-run dimension", "[dryrun][property]") {
  Rng rng(61);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Circuit c = gen_random(8, 20, 600 + seed);
    const TreeTopology t = find_tree_structure(c, 2);
    const auto before = virtual_dims(dryrun_tree(c, t));
    const int a = static_cast<int>(rng.below(8));
    const int b = (a + 1 + static_cast<int>(rng.below(7))) % 8;
    const auto after = virtual_dims(dryrun_tree(with_gate(c, gates::random_2q(a, b, rng)), t));
    for (const auto& [node, dim] : before) CHECK(after.at(node) >= dim);
  }
}

TEST_CASE("a cap clamps edges and records the clamp", "[dryrun]") {
  const Circuit c = gen_random(10, 60, 3);
  const TreeTopology t = find_tree_structure(c, 2);
  const DryRunReport open = dryrun_tree(c, t);
  REQUIRE(open.max_bond > 4);
  const DryRunReport capped = dryrun_tree(c, t, 4);
  CHECK(capped.max_bond <= 4);
  CHECK_FALSE(capped.cap_events.empty());
  CHECK_FALSE(capped.within_d_max);
  for (const CapEvent& e : capped.cap_events) CHECK(e.wanted > 4);
}

TEST_CASE("MPS dry-run of a long-range gate", "[dryrun]") {
  Circuit c(4);
  c.add(gates::cx(0, 3));
  const DryRunReport r = dryrun_mps(c);
  for (const LedgerEdge& e : r.edges)
    if (!e.physical) CHECK(e.dim == 2);
  const DryRunReport reordered = dryrun_mps(c, {0, 3, 1, 2});
  CHECK(reordered.max_bond == 2);
  std::size_t wide = 0;
  for (const LedgerEdge& e : reordered.edges)
    if (!e.physical && e.dim == 2) ++wide;
  CHECK(wide == 1);
}

TEST_CASE("admissibility bounds", "[dryrun][admissible]") {
  const TrianglePattern one = gen_triangle_pattern(1, 16);
  const AdmissibilityReport r = admissible(one.circuit, one.topology, 16);
  CHECK(r.admissible);
  CHECK(r.arity == 3);
  CHECK(r.l_cluster == 2);
  CHECK_THAT(r.edge_crossing_bound, WithinAbs(2.0, 1e-12));
  CHECK_THAT(r.node_crossing_bound, WithinAbs(4.0, 1e-12));

  const TreeTopology binary = TreeTopology::perfect(2, 3);
  const AdmissibilityReport b = admissible(Circuit(8), binary, 64);
  CHECK_THAT(b.node_crossing_bound, WithinAbs(0.75 * 6.0, 1e-12));
}

TEST_CASE("admissibility flags overloaded edges", "[dryrun][admissible]") {
  // Three rank-4 gates across the root of a perfect binary tree need 64.
  const TreeTopology t = TreeTopology::perfect(2, 4);
  Circuit c(16);
  Rng rng(7);
  for (int i = 0; i < 3; ++i) c.add(gates::random_2q(i, 8 + i, rng));
  const AdmissibilityReport ok = admissible(c, t, 64);
  const AdmissibilityReport bad = admissible(c, t, 16);
  CHECK(ok.admissible);
  CHECK_FALSE(bad.admissible);
  CHECK_FALSE(bad.violating_edges.empty());
  for (int child : bad.violating_edges) {
    const auto it = std::find_if(bad.edges.begin(), bad.edges.end(),
                                 [&](const EdgeCrossing& e) { return e.child == child; });
    REQUIRE(it != bad.edges.end());
    CHECK(it->restricted);
    CHECK(it->rank_product == 64);
    CHECK(it->crossings == 3);
  }
}

TEST_CASE("triangle patterns", "[dryrun][triangle]") {
  for (int levels : {1, 2, 3}) {
    std::size_t qubits = 9;
    for (int l = 1; l < levels; ++l) qubits *= 3;
    for (int d : {16, 64}) {
      const TrianglePattern p = gen_triangle_pattern(levels, d);
      CHECK(static_cast<std::size_t>(p.circuit.num_qubits()) == qubits);
      CHECK(p.topology == TreeTopology::perfect(3, levels + 1));
      CHECK(admissible(p.circuit, p.topology, d).admissible);
      const DryRunReport r = dryrun_tree(p.circuit, p.topology);
      CHECK(r.max_bond <= static_cast<std::uint64_t>(d));
    }
  }
  CHECK_THROWS_AS(gen_triangle_pattern(0, 16), ValidationError);
  CHECK_THROWS_AS(gen_triangle_pattern(2, 32), ValidationError);
}

TEST_CASE("triangle pattern separates trees from chains", "[dryrun][triangle]") {
  const auto start = std::chrono::steady_clock::now();
  const TrianglePattern p = gen_triangle_pattern(2, 64);
  CHECK(dryrun_tree(p.circuit, p.topology).max_bond <= 64);
  CHECK(dryrun_mps(p.circuit).max_bond > 64);
  Rng rng(71);
  std::vector<int> order(27);
  std::iota(order.begin(), order.end(), 0);
  for (int trial = 0; trial < 5; ++trial) {
    for (int i = 26; i > 0; --i) std::swap(order[i], order[rng.below(i + 1)]);
    CHECK(dryrun_mps(p.circuit, order).max_bond > 64);
  }
  CHECK(std::chrono::steady_clock::now() - start < std::chrono::seconds(10));
}

TEST_CASE("reports serialize", "[dryrun]") {
  const DryRunReport r = dryrun_tree(testing::bell_circuit(),
                                     TreeTopology(TreeNodeSpec::internal({TreeNodeSpec::leaf(0), TreeNodeSpec::leaf(1)})));
  const std::string csv = dryrun_to_csv(r);
  CHECK(csv.rfind("edge_id,kind,level,dim\n", 0) == 0);
  CHECK(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')) == r.edges.size() + 1);
  const std::string json = dryrun_to_json(r);
  CHECK(json.find("\"m_entries\"") != std::string::npos);
  CHECK(dryrun_to_json(r) == json);
}
