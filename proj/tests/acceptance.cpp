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

// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Tolerances are pinned below and never adjusted per run.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "test_support.hpp"
#include "ttnsim/bounds.hpp"
#include "ttnsim/circuit_io.hpp"
#include "ttnsim/dryrun.hpp"
#include "ttnsim/gates.hpp"
#include "ttnsim/generators.hpp"
#include "ttnsim/mps.hpp"
#include "ttnsim/reference.hpp"
#include "ttnsim/tree_search.hpp"
#include "ttnsim/ttn.hpp"

using namespace ttnsim;

namespace {

constexpr double kFidelityTol = 1e-10;
constexpr double kCanonicalTol = 1e-10;
constexpr double kNormTol = 1e-10;
constexpr double kSplitTol = 1e-10;
constexpr double kZeroErrorTol = 1e-10;
constexpr double kMonotoneNoise = 1e-9;
constexpr double kQualitativeError = 0.01;
constexpr double kOracleSeconds = 60.0;
constexpr double kSeparationSeconds = 10.0;

constexpr int kOracleCircuits = 50;
constexpr int kSplitSamples = 100;
constexpr int kRandomOrders = 20;
constexpr int kLatticeSeeds = 10;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* format, auto... values) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, values...);
  return buf;
}

// Criterion 1's circuit family, shared with criteria 2, 4 and 9.
struct OracleCase {
  Circuit circuit;
  TreeTopology topology;
};

const std::vector<OracleCase>& oracle_cases() {
  static const std::vector<OracleCase> cases = [] {
    std::vector<OracleCase> out;
    for (int i = 0; i < kOracleCircuits; ++i) {
      const int n = 4 + i % 9;
      const int gates = 30 + (i * 7) % 31;
      Circuit c = gen_random(n, gates, 1000 + static_cast<std::uint64_t>(i));
      TreeTopology t = find_tree_structure(c, (n + 3) / 4);
      out.push_back({std::move(c), std::move(t)});
    }
    return out;
  }();
  return cases;
}

Outcome oracle_equivalence() {
  const auto start = Clock::now();
  double worst_ttn = 1.0, worst_mps = 1.0;
  for (const OracleCase& oc : oracle_cases()) {
    const std::vector<cplx> exact = sv_simulate(oc.circuit).amplitudes;
    const TtnState t = simulate_ttn(oc.circuit, oc.topology, TruncationPolicy::exact());
    const MpsState m = simulate_mps(oc.circuit, TruncationPolicy::exact());
    worst_ttn = std::min(worst_ttn, fidelity(exact, t.contract_to_statevector()));
    worst_mps = std::min(worst_mps, fidelity(exact, m.contract_to_statevector()));
  }
  const double seconds = seconds_since(start);
  Outcome o;
  o.pass = worst_ttn >= 1.0 - kFidelityTol && worst_mps >= 1.0 - kFidelityTol && seconds < kOracleSeconds;
  o.detail = fmt("min fidelity ttn=1-%.1e mps=1-%.1e over %d circuits, %.1f s", 1.0 - worst_ttn,
                 1.0 - worst_mps, kOracleCircuits, seconds);
  return o;
}

Outcome canonical_form() {
  double worst_defect = 0.0, worst_norm = 0.0;
  for (const OracleCase& oc : oracle_cases()) {
    TtnState t = init_basis_state(oc.topology, std::vector<int>(oc.circuit.num_qubits(), 0));
    for (const Gate& g : oc.circuit.gates()) {
      t.apply(g, TruncationPolicy::exact());
      worst_defect = std::max(worst_defect, t.canonical_defect());
      worst_norm = std::max(worst_norm, std::abs(t.norm() - 1.0));
    }
  }
  Outcome o;
  o.pass = worst_defect <= kCanonicalTol && worst_norm <= kNormTol;
  o.detail = fmt("max isometry defect %.1e, max |norm-1| %.1e after every gate", worst_defect, worst_norm);
  return o;
}

Outcome gate_split() {
  Rng rng(2024);
  double worst = 0.0;
  for (int i = 0; i < kSplitSamples; ++i) {
    const Gate g = gates::random_2q(0, 1, rng);
    const GateSplit s = split_gate(g);
    const double inv = 1.0 / std::sqrt(static_cast<double>(s.k));
    double diff = 0.0;
    for (std::size_t oa = 0; oa < 2; ++oa)
      for (std::size_t ob = 0; ob < 2; ++ob)
        for (std::size_t ia = 0; ia < 2; ++ia)
          for (std::size_t ib = 0; ib < 2; ++ib) {
            cplx sum = 0.0;
            for (int a = 0; a < s.k; ++a)
              sum += s.left.at({oa, ia, static_cast<std::size_t>(a)}) *
                     s.right.at({ob, ib, static_cast<std::size_t>(a)});
            diff = std::max(diff, std::abs(inv * sum - g.matrix(2 * oa + ob, 2 * ia + ib)));
          }
    worst = std::max(worst, diff);
  }
  const int k_cnot = split_gate(gates::cx(0, 1)).k;
  const int k_fsim = split_gate(gates::fsim(0, 1, 0.9, 1.7)).k;
  Outcome o;
  o.pass = worst <= kSplitTol && k_cnot == 2 && k_fsim == 4;
  o.detail = fmt("max reconstruction error %.1e, k(CNOT)=%d, k(fSIM)=%d", worst, k_cnot, k_fsim);
  return o;
}

Outcome cluster_bounds() {
  const int l16 = l_cluster(3, 16), l64 = l_cluster(3, 64);
  const TrianglePattern p = gen_triangle_pattern(1, 16);
  const AdmissibilityReport r = admissible(p.circuit, p.topology, 16);
  int bound_failures = 0;
  for (const OracleCase& oc : oracle_cases()) {
    const TtnState t = simulate_ttn(oc.circuit, oc.topology, TruncationPolicy::exact());
    const NetworkMetrics m = t.metrics();
    const int arity = std::max(2, oc.topology.max_arity());
    if (m.m_entries > entries_upper_bound(arity, oc.circuit.num_qubits(), m.d_max_observed)) ++bound_failures;
  }
  Outcome o;
  o.pass = l16 == 2 && l64 == 2 && std::abs(r.edge_crossing_bound - 2.0) < 1e-12 &&
           std::abs(r.node_crossing_bound - 4.0) < 1e-12 && bound_failures == 0;
  o.detail = fmt("l_cluster(3,16)=%d l_cluster(3,64)=%d, edge bound %.3g, node bound %.3g, "
                 "%d entry-bound violations",
                 l16, l64, r.edge_crossing_bound, r.node_crossing_bound, bound_failures);
  return o;
}

Outcome level_bound() {
  const TreeTopology t = TreeTopology::perfect(2, 3);
  std::map<int, std::size_t> observed;
  int violations = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Circuit c = gen_random(8, 200, 3000 + seed);
    TtnState s = init_basis_state(t, std::vector<int>(8, 0));
    for (const Gate& g : c.gates()) {
      s.apply(g, TruncationPolicy::exact());
      for (const EdgeDim& e : s.metrics().edges) {
        observed[e.level] = std::max(observed[e.level], e.dim);
        if (e.dim > (std::size_t{1} << (std::size_t{1} << (e.level - 1)))) ++violations;
      }
    }
  }
  std::string levels;
  for (const auto& [level, dim] : observed) levels += fmt(" l%d=%zu", level, dim);
  Outcome o;
  o.pass = violations == 0;
  o.detail = fmt("%d violations; observed maxima%s", violations, levels.c_str());
  return o;
}

Outcome separation() {
  const auto start = Clock::now();
  const TrianglePattern p = gen_triangle_pattern(2, 64);
  const std::uint64_t tree = dryrun_tree(p.circuit, p.topology).max_bond;
  std::uint64_t min_chain = dryrun_mps(p.circuit).max_bond;
  const std::uint64_t natural = min_chain;
  Rng rng(77);
  std::vector<int> order(p.circuit.num_qubits());
  std::iota(order.begin(), order.end(), 0);
  for (int i = 0; i < kRandomOrders; ++i) {
    for (std::size_t j = order.size() - 1; j > 0; --j) std::swap(order[j], order[rng.below(j + 1)]);
    min_chain = std::min(min_chain, dryrun_mps(p.circuit, order).max_bond);
  }
  const double seconds = seconds_since(start);
  Outcome o;
  o.pass = tree <= 64 && min_chain > 64 && seconds < kSeparationSeconds;
  o.detail = fmt("ttn max bond %llu, mps natural %llu, min over %d random orders %llu, %.2f s",
                 static_cast<unsigned long long>(tree), static_cast<unsigned long long>(natural),
                 kRandomOrders, static_cast<unsigned long long>(min_chain), seconds);
  return o;
}

Outcome treelike_showcase() {
  const Circuit c = gen_treelike(4, 1);
  const TreeTopology t = find_tree_structure(c, 4);
  const TtnState ttn = simulate_ttn(c, t, TruncationPolicy::capped(16));
  const DryRunReport dry = dryrun_tree(c, t, 16);
  const MpsState mps = simulate_mps(c, TruncationPolicy::exact());
  const NetworkMetrics tm = ttn.metrics(), mm = mps.metrics();
  const double f = fidelity(sv_simulate(c).amplitudes, ttn.contract_to_statevector());
  Outcome o;
  o.pass = tm.max_bond() <= 16 && ttn.stats().truncation_events == 0 && dry.cap_events.empty() &&
           f >= 1.0 - kFidelityTol && mm.m_entries > tm.m_entries;
  o.detail = fmt("ttn max bond %zu, %zu truncations, %zu dry-run cap events, fidelity 1-%.1e; "
                 "m_entries ttn=%zu mps=%zu",
                 tm.max_bond(), ttn.stats().truncation_events, dry.cap_events.size(), 1.0 - f,
                 tm.m_entries, mm.m_entries);
  return o;
}

Outcome truncation_study() {
  const std::vector<double> grid = {0.0, 1e-8, 1e-6, 1e-4, 1e-2};
  // Extra points inside [1e-4, 1e-2] for the qualitative check.
  const std::vector<double> window = {1e-4, 2e-4, 5e-4, 7e-4, 1e-3, 2e-3, 5e-3, 1e-2};
  std::vector<double> mean_error(grid.size(), 0.0), mean_entries(grid.size(), 0.0);
  double worst_zero = 0.0, worst_error_step = 0.0;
  long long worst_entries_step = 0;
  double peak_window = 0.0;
  for (int seed = 0; seed < kLatticeSeeds; ++seed) {
    const Circuit c = gen_lattice(4, 8, static_cast<std::uint64_t>(seed + 1));
    const TreeTopology t = find_tree_structure(c, c.num_qubits() / 4);
    const std::vector<cplx> exact = sv_simulate(c).amplitudes;
    std::vector<double> errors;
    std::vector<std::size_t> entries;
    for (double sigma : grid) {
      const TtnState s = simulate_ttn(c, t, TruncationPolicy::threshold(sigma));
      errors.push_back(overlap_error(exact, s.contract_to_statevector()));
      entries.push_back(s.metrics().m_entries);
    }
    worst_zero = std::max(worst_zero, errors[0]);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      mean_error[i] += errors[i] / kLatticeSeeds;
      mean_entries[i] += static_cast<double>(entries[i]) / kLatticeSeeds;
      if (i > 0) {
        worst_error_step = std::max(worst_error_step, errors[i - 1] - errors[i]);
        worst_entries_step = std::max(worst_entries_step, static_cast<long long>(entries[i]) -
                                                              static_cast<long long>(entries[i - 1]));
      }
    }
    for (double sigma : window) {
      const TtnState s = simulate_ttn(c, t, TruncationPolicy::threshold(sigma));
      peak_window = std::max(peak_window, overlap_error(exact, s.contract_to_statevector()));
    }
  }
  // Per-circuit: error never drops and memory never grows as sigma_rel rises,
  // so M_saved never grows as accuracy rises.
  const bool zero_ok = worst_zero <= kZeroErrorTol;
  const bool error_monotone = worst_error_step <= kMonotoneNoise;
  const bool saved_monotone = worst_entries_step <= 0;
  const bool reaches = peak_window >= kQualitativeError;
  std::string errs;
  for (std::size_t i = 0; i < grid.size(); ++i)
    errs += fmt(" %.0e:%.2e/%.3f", grid[i], mean_error[i], 1.0 - mean_entries[i] / mean_entries[0]);
  Outcome o;
  o.pass = zero_ok && error_monotone && saved_monotone && reaches;
  o.detail = fmt("zero-threshold %s (max %.1e), error monotone %s, M_saved monotone %s, "
                 "max error in [1e-4,1e-2] %.2e (needs >= %.2g); mean error/M_saved%s",
                 zero_ok ? "ok" : "FAIL", worst_zero, error_monotone ? "ok" : "FAIL",
                 saved_monotone ? "ok" : "FAIL", peak_window, kQualitativeError, errs.c_str());
  return o;
}

Outcome dryrun_soundness() {
  int violations = 0, edges = 0;
  for (const OracleCase& oc : oracle_cases()) {
    const DryRunReport dry = dryrun_tree(oc.circuit, oc.topology);
    std::map<int, std::uint64_t> bound;
    for (const LedgerEdge& e : dry.edges)
      if (!e.physical) bound[e.lower] = e.dim;
    const TtnState t = simulate_ttn(oc.circuit, oc.topology, TruncationPolicy::exact());
    for (const EdgeDim& e : t.metrics().edges) {
      ++edges;
      if (e.dim > bound.at(e.child)) ++violations;
    }
    const DryRunReport chain = dryrun_mps(oc.circuit);
    std::map<int, std::uint64_t> chain_bound;
    for (const LedgerEdge& e : chain.edges)
      if (!e.physical) chain_bound[e.lower] = e.dim;
    const MpsState m = simulate_mps(oc.circuit, TruncationPolicy::exact());
    for (const EdgeDim& e : m.metrics().edges) {
      ++edges;
      if (e.dim > chain_bound.at(e.parent)) ++violations;
    }
  }
  Outcome o;
  o.pass = violations == 0;
  o.detail = fmt("%d of %d engine edges above their dry-run dimension", violations, edges);
  return o;
}

std::string strip_timing(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, kept;
  while (std::getline(in, line)) {
    for (int i = 0; i < 2; ++i) line = line.substr(0, line.rfind(','));
    kept += line + '\n';
  }
  return kept;
}

Outcome cli_determinism() {
  testing::TempDir dir;
  std::ostringstream sink;
  auto run = [&](std::vector<std::string> args) { return cli::run(args, sink, sink); };
  struct Command {
    std::function<std::vector<std::string>(const std::string&)> args;
    std::vector<std::string> outputs;
    bool timed_csv = false;
  };
  const std::string circuit = dir.file("random.json");
  if (run({"gen", "random", "--qubits", "8", "--gates", "50", "--seed", "4", "--out", circuit}) != 0)
    return {false, "could not generate the input circuit"};
  const std::vector<Command> commands = {
      {[](const std::string& p) {
         return std::vector<std::string>{"gen", "lattice", "--n", "3", "--depth", "6", "--seed", "9", "--out", p + "c"};
       },
       {"c"}},
      {[](const std::string& p) {
         return std::vector<std::string>{"gen", "treelike", "--clusters", "4", "--out", p + "c"};
       },
       {"c"}},
      {[](const std::string& p) {
         return std::vector<std::string>{"gen", "triangle", "--levels", "2", "--dmax", "64",
                                         "--out", p + "c", "--topology-out", p + "t"};
       },
       {"c", "t"}},
      {[&](const std::string& p) {
         return std::vector<std::string>{"plan", "--circuit", circuit, "--clusters", "2", "--out", p + "t"};
       },
       {"t"}},
      {[&](const std::string& p) {
         return std::vector<std::string>{"simulate", "--circuit", circuit, "--sigma-rel", "0,1e-3,1e-1",
                                         "--seed", "3", "--csv-out", p + "csv"};
       },
       {"csv"},
       true},
      {[&](const std::string& p) {
         return std::vector<std::string>{"simulate", "--circuit", circuit, "--engine", "mps",
                                         "--sigma-rel", "1e-2", "--seed", "3", "--csv-out", p + "csv"};
       },
       {"csv"},
       true},
      {[&](const std::string& p) {
         return std::vector<std::string>{"dryrun", "--circuit", circuit, "--clusters", "2", "--dmax", "16",
                                         "--out", p + "json", "--csv-out", p + "csv"};
       },
       {"json", "csv"}},
  };
  int differences = 0, compared = 0;
  for (std::size_t i = 0; i < commands.size(); ++i) {
    const std::string a = dir.file("a" + std::to_string(i) + "."), b = dir.file("b" + std::to_string(i) + ".");
    if (run(commands[i].args(a)) != 0 || run(commands[i].args(b)) != 0)
      return {false, fmt("command %zu failed", i)};
    for (const std::string& ext : commands[i].outputs) {
      std::string x = read_text_file(a + ext), y = read_text_file(b + ext);
      if (commands[i].timed_csv) {
        x = strip_timing(x);
        y = strip_timing(y);
      }
      ++compared;
      if (x != y) ++differences;
    }
  }
  Outcome o;
  o.pass = differences == 0;
  o.detail = fmt("%d of %d repeated outputs differ", differences, compared);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Outcome (*)()>> criteria = {
      {"oracle equivalence", oracle_equivalence},
      {"canonical form", canonical_form},
      {"gate split", gate_split},
      {"cluster level and bounds", cluster_bounds},
      {"level dimension bound", level_bound},
      {"tree vs chain separation", separation},
      {"tree-like showcase", treelike_showcase},
      {"truncation study", truncation_study},
      {"dry-run soundness", dryrun_soundness},
      {"CLI determinism", cli_determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("criterion %2zu %s  %s: %s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
