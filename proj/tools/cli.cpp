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

#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "ttnsim/circuit_io.hpp"
#include "ttnsim/dryrun.hpp"
#include "ttnsim/errors.hpp"
#include "ttnsim/generators.hpp"
#include "ttnsim/mps.hpp"
#include "ttnsim/reference.hpp"
#include "ttnsim/topology.hpp"
#include "ttnsim/tree_search.hpp"
#include "ttnsim/ttn.hpp"

namespace ttnsim::cli {

namespace {

using Clock = std::chrono::steady_clock;
using nlohmann::ordered_json;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int default_clusters(int n) { return std::max(1, n / 4); }

// Engine selection shared by simulate and compare.
struct EngineConfig {
  std::string engine = "ttn";
  std::string topology_path;
  int clusters = 0;  // 0 = default for the circuit width
  std::vector<int> order;
  std::size_t memory_cap = kDefaultMemoryCap;
};

struct EngineRun {
  std::string engine;
  TruncationPolicy policy;
  double seconds_total = 0.0;
  double seconds_per_gate = 0.0;
  std::size_t d_max_observed = 0;
  std::size_t max_bond = 0;
  std::size_t m_entries = 0;
  std::size_t truncation_events = 0;
  std::optional<std::vector<cplx>> state;  // when the width allows it
};

TreeTopology topology_for(const Circuit& c, const EngineConfig& cfg) {
  if (!cfg.topology_path.empty()) return load_topology(cfg.topology_path);
  return find_tree_structure(c, cfg.clusters > 0 ? cfg.clusters : default_clusters(c.num_qubits()));
}

EngineRun run_engine(const Circuit& c, const EngineConfig& cfg, const TruncationPolicy& policy) {
  EngineRun run;
  run.engine = cfg.engine;
  run.policy = policy;
  policy.validate();
  const bool dense_ok = c.num_qubits() <= kDenseQubitCap;
  const auto start = Clock::now();
  if (cfg.engine == "ttn") {
    const TreeTopology topology = topology_for(c, cfg);
    if (topology.num_qubits() != c.num_qubits()) {
      throw ValidationError("topology and circuit disagree on the qubit count");
    }
    TtnState s(topology, std::vector<int>(c.num_qubits(), 0));
    s.set_memory_cap(cfg.memory_cap);
    for (const Gate& g : c.gates()) s.apply(g, policy);
    run.seconds_total = seconds_since(start);
    const NetworkMetrics m = s.metrics();
    run.d_max_observed = m.d_max_observed;
    run.max_bond = m.max_bond();
    run.m_entries = m.m_entries;
    run.truncation_events = s.stats().truncation_events;
    if (dense_ok) run.state = s.contract_to_statevector(kDenseQubitCap);
  } else if (cfg.engine == "mps") {
    MpsState s(c.num_qubits(), std::vector<int>(c.num_qubits(), 0), cfg.order);
    s.set_memory_cap(cfg.memory_cap);
    for (const Gate& g : c.gates()) s.apply(g, policy);
    run.seconds_total = seconds_since(start);
    const NetworkMetrics m = s.metrics();
    run.d_max_observed = m.d_max_observed;
    run.max_bond = m.max_bond();
    run.m_entries = m.m_entries;
    run.truncation_events = s.stats().truncation_events;
    if (dense_ok) run.state = s.contract_to_statevector(kDenseQubitCap);
  } else if (cfg.engine == "statevector") {
    DenseState s = sv_simulate(c);
    run.seconds_total = seconds_since(start);
    run.d_max_observed = s.amplitudes.size();
    run.max_bond = 1;
    run.m_entries = s.amplitudes.size();
    run.state = std::move(s.amplitudes);
  } else {
    throw ValidationError("unknown engine '" + cfg.engine + "'");
  }
  run.seconds_per_gate = c.size() ? run.seconds_total / static_cast<double>(c.size()) : 0.0;
  return run;
}

std::string policy_cap_text(const TruncationPolicy& p) {
  return p.cap ? std::to_string(*p.cap) : std::string();
}

// Parses "a,b,c" or repeated values into thresholds.
std::vector<double> parse_thresholds(const std::vector<std::string>& raw) {
  std::vector<double> out;
  for (const std::string& chunk : raw) {
    std::stringstream ss(chunk);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) continue;
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(item, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != item.size()) throw ValidationError("bad threshold '" + item + "'");
      out.push_back(v);
    }
  }
  if (out.empty()) out.push_back(0.0);
  return out;
}

std::vector<int> parse_order(const std::string& text) {
  std::vector<int> order;
  if (text.empty()) return order;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      order.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw ValidationError("bad qubit order entry '" + item + "'");
    }
  }
  return order;
}

std::string state_to_json(const EngineRun& run, int num_qubits) {
  std::ostringstream out;
  out << "{\n  \"num_qubits\": " << num_qubits << ",\n  \"engine\": \"" << run.engine
      << "\",\n  \"m_entries\": " << run.m_entries << ",\n  \"d_max_observed\": "
      << run.d_max_observed << ",\n  \"amplitudes\": [";
  const auto& amps = *run.state;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    out << (i ? ", " : "") << '[' << format_double(amps[i].real()) << ", "
        << format_double(amps[i].imag()) << ']';
  }
  out << "]\n}\n";
  return out.str();
}

struct LoadedState {
  int num_qubits = 0;
  std::size_t m_entries = 0;
  std::vector<cplx> amplitudes;
};

LoadedState load_state(const std::string& path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_text_file(path));
    LoadedState s;
    s.num_qubits = doc.at("num_qubits").get<int>();
    s.m_entries = doc.at("m_entries").get<std::size_t>();
    for (const auto& pair : doc.at("amplitudes")) {
      s.amplitudes.emplace_back(pair.at(0).get<double>(), pair.at(1).get<double>());
    }
    if (s.amplitudes.size() != (std::size_t{1} << s.num_qubits)) {
      throw ValidationError("state file " + path + " has the wrong amplitude count");
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("malformed state file " + path + ": " + e.what());
  }
}

constexpr const char* kRunCsvHeader =
    "engine,num_qubits,num_gates,sigma_rel,cap,d_max_observed,max_bond,m_entries,fidelity,"
    "overlap_error,truncation_events,seed,seconds_total,seconds_per_gate\n";

// ---- subcommands -----------------------------------------------------------

struct GenArgs {
  std::string kind;
  int n = 4, depth = 8, clusters = 4, reps = 1, levels = 2, d_max = 64;
  int qubits = 8, gates = 40;
  std::uint64_t seed = 1;
  std::string out, topology_out;
};

int cmd_gen(const GenArgs& a, std::ostream& out) {
  std::optional<TreeTopology> topology;
  Circuit c(1);
  if (a.kind == "lattice") {
    c = gen_lattice(a.n, a.depth, a.seed);
  } else if (a.kind == "treelike") {
    c = gen_treelike(a.clusters, a.reps);
  } else if (a.kind == "triangle") {
    TrianglePattern p = gen_triangle_pattern(a.levels, a.d_max);
    c = std::move(p.circuit);
    topology = std::move(p.topology);
  } else if (a.kind == "random") {
    if (a.qubits < 1) throw ValidationError("random circuit needs >= 1 qubit");
    c = gen_random(a.qubits, a.gates, a.seed);
  } else {
    throw ValidationError("unknown circuit kind '" + a.kind + "'");
  }
  save_circuit(c, a.out);
  if (!a.topology_out.empty()) {
    if (!topology) throw ValidationError("only the triangle kind has a matched topology");
    save_topology(*topology, a.topology_out);
  }
  out << "wrote " << a.out << ": " << c.num_qubits() << " qubits, " << c.size() << " gates\n";
  return kExitOk;
}

struct PlanArgs {
  std::string circuit, out;
  int clusters = 0;
};

int cmd_plan(const PlanArgs& a, std::ostream& out, std::ostream& err) {
  const Circuit c = load_circuit(a.circuit);
  const int clusters = a.clusters > 0 ? a.clusters : default_clusters(c.num_qubits());
  const auto start = Clock::now();
  const TreeTopology t = find_tree_structure(c, clusters);
  err << "planner took " << seconds_since(start) << " s\n";
  save_topology(t, a.out);
  out << "wrote " << a.out << ": " << t.num_qubits() << " leaves, arity " << t.max_arity()
      << ", height " << t.height() << "\n";
  return kExitOk;
}

struct SimulateArgs {
  std::string circuit;
  EngineConfig engine;
  std::vector<std::string> sigma_rel;
  std::size_t cap = 0;
  std::uint64_t seed = 0;
  std::string order, metrics_out, csv_out, state_out;
};

int cmd_simulate(SimulateArgs a, std::ostream& out) {
  const Circuit c = load_circuit(a.circuit);
  a.engine.order = parse_order(a.order);
  std::optional<std::vector<cplx>> oracle;
  if (c.num_qubits() <= kDenseQubitCap) oracle = sv_simulate(c).amplitudes;

  ordered_json records = ordered_json::array();
  std::string csv = kRunCsvHeader;
  std::optional<EngineRun> last;
  for (double sigma : parse_thresholds(a.sigma_rel)) {
    TruncationPolicy policy{sigma, a.cap > 0 ? std::optional<std::size_t>(a.cap) : std::nullopt};
    EngineRun run = run_engine(c, a.engine, policy);
    ordered_json rec{{"engine", run.engine},
                     {"circuit", a.circuit},
                     {"num_qubits", c.num_qubits()},
                     {"num_gates", c.size()},
                     {"sigma_rel", sigma},
                     {"cap", policy.cap ? ordered_json(*policy.cap) : ordered_json(nullptr)},
                     {"d_max_observed", run.d_max_observed},
                     {"max_bond", run.max_bond},
                     {"m_entries", run.m_entries},
                     {"truncation_events", run.truncation_events},
                     {"seed", a.seed}};
    std::string fid_text, err_text;
    if (oracle && run.state) {
      const double f = fidelity(*oracle, *run.state);
      rec["fidelity"] = f;
      rec["overlap_error"] = overlap_error(*oracle, *run.state);
      fid_text = format_double(f);
      err_text = format_double(overlap_error(*oracle, *run.state));
    } else {
      rec["fidelity"] = nullptr;
      rec["overlap_error"] = nullptr;
    }
    rec["seconds_total"] = run.seconds_total;
    rec["seconds_per_gate"] = run.seconds_per_gate;
    records.push_back(rec);

    csv += run.engine + ',' + std::to_string(c.num_qubits()) + ',' + std::to_string(c.size()) +
           ',' + format_double(sigma) + ',' + policy_cap_text(policy) + ',' +
           std::to_string(run.d_max_observed) + ',' + std::to_string(run.max_bond) + ',' +
           std::to_string(run.m_entries) + ',' + fid_text + ',' + err_text + ',' +
           std::to_string(run.truncation_events) + ',' + std::to_string(a.seed) + ',' +
           format_double(run.seconds_total) + ',' + format_double(run.seconds_per_gate) + '\n';

    out << run.engine << " sigma_rel=" << sigma << " max_bond=" << run.max_bond
        << " m_entries=" << run.m_entries;
    if (!fid_text.empty()) out << " fidelity=" << fid_text;
    out << " seconds=" << run.seconds_total << "\n";
    last = std::move(run);
  }
  if (!a.metrics_out.empty()) write_text_file(a.metrics_out, records.dump(2) + "\n");
  if (!a.csv_out.empty()) write_text_file(a.csv_out, csv);
  if (!a.state_out.empty()) {
    if (!last->state) throw ValidationError("state dump needs at most 20 qubits");
    write_text_file(a.state_out, state_to_json(*last, c.num_qubits()));
  }
  return kExitOk;
}

struct DryrunArgs {
  std::string circuit, topology, order, out, csv_out;
  int clusters = 0;
  bool mps = false;
  std::uint64_t d_max = 0, cap = 0;
};

int cmd_dryrun(const DryrunArgs& a, std::ostream& out) {
  const Circuit c = load_circuit(a.circuit);
  const std::optional<std::uint64_t> cap =
      a.cap > 0 ? std::optional<std::uint64_t>(a.cap) : std::nullopt;
  DryRunReport report;
  std::optional<AdmissibilityReport> verdict;
  if (a.mps) {
    report = dryrun_mps(c, parse_order(a.order), cap);
  } else {
    EngineConfig cfg;
    cfg.topology_path = a.topology;
    cfg.clusters = a.clusters;
    const TreeTopology t = topology_for(c, cfg);
    report = dryrun_tree(c, t, cap);
    if (a.d_max > 0) verdict = admissible(c, t, a.d_max);
  }
  if (a.d_max > 0) {
    report.d_max = a.d_max;
    report.within_d_max = report.cap_events.empty() && report.max_bond <= a.d_max;
  }
  std::string json_text = dryrun_to_json(report);
  if (verdict) {
    ordered_json doc = ordered_json::parse(json_text);
    ordered_json adm{{"admissible", verdict->admissible},
                     {"l_cluster", verdict->l_cluster},
                     {"arity", verdict->arity},
                     {"edge_crossing_bound", verdict->edge_crossing_bound},
                     {"node_crossing_bound", verdict->node_crossing_bound},
                     {"violating_edges", verdict->violating_edges}};
    doc["admissibility"] = adm;
    json_text = doc.dump(2) + "\n";
  }
  if (!a.out.empty()) write_text_file(a.out, json_text);
  if (!a.csv_out.empty()) write_text_file(a.csv_out, dryrun_to_csv(report));
  out << (a.mps ? "mps" : "ttn") << " max_bond=" << report.max_bond
      << " m_entries=" << report.m_entries << " cap_events=" << report.cap_events.size();
  if (a.d_max > 0) out << " within_d_max=" << (report.within_d_max ? "yes" : "no");
  if (verdict) out << " admissible=" << (verdict->admissible ? "yes" : "no");
  out << "\n";
  return kExitOk;
}

struct CompareArgs {
  std::string state_a, state_b, circuit, out;
  EngineConfig engine_a, engine_b;
  std::string order;
  double sigma_a = 0.0, sigma_b = 0.0;
  std::size_t cap_a = 0, cap_b = 0;
};

int cmd_compare(CompareArgs a, std::ostream& out) {
  double error = 0.0;
  std::size_t m_a = 0, m_b = 0;
  ordered_json doc;
  if (!a.state_a.empty() || !a.state_b.empty()) {
    if (a.state_a.empty() || a.state_b.empty()) {
      throw ValidationError("compare needs both --state-a and --state-b");
    }
    const LoadedState sa = load_state(a.state_a), sb = load_state(a.state_b);
    if (sa.num_qubits != sb.num_qubits) throw ValidationError("state widths differ");
    error = overlap_error(sa.amplitudes, sb.amplitudes);
    m_a = sa.m_entries;
    m_b = sb.m_entries;
  } else {
    if (a.circuit.empty()) throw ValidationError("compare needs --circuit or two state files");
    const Circuit c = load_circuit(a.circuit);
    if (c.num_qubits() > kDenseQubitCap) throw ValidationError("compare needs at most 20 qubits");
    a.engine_a.order = a.engine_b.order = parse_order(a.order);
    auto cap = [](std::size_t v) {
      return v > 0 ? std::optional<std::size_t>(v) : std::nullopt;
    };
    const EngineRun ra = run_engine(c, a.engine_a, {a.sigma_a, cap(a.cap_a)});
    const EngineRun rb = run_engine(c, a.engine_b, {a.sigma_b, cap(a.cap_b)});
    error = overlap_error(*ra.state, *rb.state);
    m_a = ra.m_entries;
    m_b = rb.m_entries;
    doc["engine_a"] = ra.engine;
    doc["engine_b"] = rb.engine;
    doc["sigma_rel_a"] = a.sigma_a;
    doc["sigma_rel_b"] = a.sigma_b;
    doc["max_bond_a"] = ra.max_bond;
    doc["max_bond_b"] = rb.max_bond;
  }
  const double m_saved = m_a ? 1.0 - static_cast<double>(m_b) / static_cast<double>(m_a) : 0.0;
  doc["overlap_error"] = error;
  doc["m_entries_a"] = m_a;
  doc["m_entries_b"] = m_b;
  doc["m_entries_delta"] = static_cast<long long>(m_b) - static_cast<long long>(m_a);
  doc["m_saved"] = m_saved;
  if (!a.out.empty()) write_text_file(a.out, doc.dump(2) + "\n");
  out << "overlap_error=" << format_double(error) << " m_saved=" << format_double(m_saved) << "\n";
  return kExitOk;
}

void add_engine_options(CLI::App* cmd, EngineConfig& cfg, const std::string& suffix) {
  cmd->add_option("--engine" + suffix, cfg.engine, "ttn, mps or statevector")
      ->check(CLI::IsMember({"ttn", "mps", "statevector"}));
  cmd->add_option("--topology" + suffix, cfg.topology_path, "Topology file for the ttn engine");
  cmd->add_option("--clusters" + suffix, cfg.clusters, "Cluster count when planning a topology")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--memory-cap" + suffix, cfg.memory_cap, "Hard cap on stored entries")
      ->check(CLI::PositiveNumber);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tree tensor network quantum circuit simulator", "ttnsim"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Write a benchmark circuit");
  g->add_option("kind", gen.kind, "lattice, treelike, triangle or random")->required();
  g->add_option("--n", gen.n, "Lattice side");
  g->add_option("--depth", gen.depth, "Lattice layers");
  g->add_option("--clusters", gen.clusters, "Tree-like cluster count");
  g->add_option("--reps", gen.reps, "Tree-like repetitions");
  g->add_option("--levels", gen.levels, "Triangle recursion levels");
  g->add_option("--dmax", gen.d_max, "Triangle variant, 16 or 64");
  g->add_option("--qubits", gen.qubits, "Random circuit width");
  g->add_option("--gates", gen.gates, "Random circuit gate count");
  g->add_option("--seed", gen.seed, "Generator seed");
  g->add_option("--out", gen.out, "Circuit file")->required();
  g->add_option("--topology-out", gen.topology_out, "Matched topology (triangle only)");

  PlanArgs plan;
  auto* p = app.add_subcommand("plan", "Search a tree topology for a circuit");
  p->add_option("--circuit", plan.circuit)->required();
  p->add_option("--clusters", plan.clusters)->check(CLI::PositiveNumber);
  p->add_option("--out", plan.out)->required();

  SimulateArgs sim;
  auto* s = app.add_subcommand("simulate", "Run a circuit on one engine");
  s->add_option("--circuit", sim.circuit)->required();
  add_engine_options(s, sim.engine, "");
  s->add_option("--sigma-rel", sim.sigma_rel, "Relative thresholds, comma separated");
  s->add_option("--cap", sim.cap, "Bond dimension cap (0 = none)");
  s->add_option("--seed", sim.seed, "Recorded with every run");
  s->add_option("--order", sim.order, "MPS qubit order, comma separated");
  s->add_option("--metrics-out", sim.metrics_out, "JSON run records");
  s->add_option("--csv-out", sim.csv_out, "CSV run records");
  s->add_option("--state-out", sim.state_out, "Dense state of the last run");

  DryrunArgs dry;
  auto* d = app.add_subcommand("dryrun", "Track bond dimensions symbolically");
  d->add_option("--circuit", dry.circuit)->required();
  d->add_option("--topology", dry.topology);
  d->add_option("--clusters", dry.clusters)->check(CLI::PositiveNumber);
  d->add_flag("--mps", dry.mps, "Use an MPS chain instead of a tree");
  d->add_option("--order", dry.order, "MPS qubit order, comma separated");
  d->add_option("--dmax", dry.d_max, "Bond ceiling for the verdict");
  d->add_option("--cap", dry.cap, "Clamp edges at this dimension");
  d->add_option("--out", dry.out, "JSON report");
  d->add_option("--csv-out", dry.csv_out, "Per-edge CSV");

  CompareArgs cmp;
  auto* c = app.add_subcommand("compare", "Overlap error and memory between two runs");
  c->add_option("--state-a", cmp.state_a);
  c->add_option("--state-b", cmp.state_b);
  c->add_option("--circuit", cmp.circuit);
  add_engine_options(c, cmp.engine_a, "-a");
  add_engine_options(c, cmp.engine_b, "-b");
  c->add_option("--sigma-rel-a", cmp.sigma_a);
  c->add_option("--sigma-rel-b", cmp.sigma_b);
  c->add_option("--cap-a", cmp.cap_a);
  c->add_option("--cap-b", cmp.cap_b);
  c->add_option("--order", cmp.order);
  c->add_option("--out", cmp.out);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*g) return cmd_gen(gen, out);
    if (*p) return cmd_plan(plan, out, err);
    if (*s) return cmd_simulate(sim, out);
    if (*d) return cmd_dryrun(dry, out);
    if (*c) return cmd_compare(cmp, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const MemoryCapExceeded& e) {
    err << "memory cap exceeded: " << e.what() << "\n";
    return kExitMemory;
  } catch (const std::ios_base::failure& e) {
    err << "i/o error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitValidation;
}

}  // namespace ttnsim::cli
