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

#include <catch_amalgamated.hpp>
#include <sstream>

#include "cli.hpp"
#include "test_support.hpp"
#include "ttnsim/circuit_io.hpp"
#include "ttnsim/generators.hpp"
#include "ttnsim/topology.hpp"
#include <json.hpp>

using namespace ttnsim;
using testing::TempDir;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

// Drops the trailing timing columns from every CSV line.
std::string without_timing(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, kept;
  while (std::getline(in, line)) {
    for (int i = 0; i < 2; ++i) line = line.substr(0, line.rfind(','));
    kept += line + '\n';
  }
  return kept;
}

std::vector<nlohmann::json> records(const std::string& path) {
  return nlohmann::json::parse(read_text_file(path)).get<std::vector<nlohmann::json>>();
}

}  // namespace

TEST_CASE("gen writes every circuit family deterministically", "[cli]") {
  TempDir dir;
  const std::vector<std::vector<std::string>> kinds = {
      {"lattice", "--n", "3", "--depth", "4", "--seed", "7"},
      {"treelike", "--clusters", "2", "--reps", "2"},
      {"random", "--qubits", "5", "--gates", "30", "--seed", "3"},
      {"triangle", "--levels", "1", "--dmax", "16"}};
  for (const auto& kind : kinds) {
    std::vector<std::string> first = {"gen"}, second = {"gen"};
    first.insert(first.end(), kind.begin(), kind.end());
    second.insert(second.end(), kind.begin(), kind.end());
    first.insert(first.end(), {"--out", dir.file("a.json")});
    second.insert(second.end(), {"--out", dir.file("b.json")});
    REQUIRE(run(first).code == cli::kExitOk);
    REQUIRE(run(second).code == cli::kExitOk);
    CHECK(read_text_file(dir.file("a.json")) == read_text_file(dir.file("b.json")));
  }
  CHECK(load_circuit(dir.file("a.json")).num_qubits() == 9);
  REQUIRE(run({"gen", "lattice", "--n", "4", "--seed", "1", "--out", dir.file("l.json")}).code == 0);
  CHECK(load_circuit(dir.file("l.json")) == gen_lattice(4, 8, 1));
}

TEST_CASE("plan writes a topology", "[cli]") {
  TempDir dir;
  save_circuit(gen_treelike(4, 1), dir.file("c.json"));
  const Result r = run({"plan", "--circuit", dir.file("c.json"), "--clusters", "4", "--out", dir.file("t.json")});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(r.err.find("planner took") != std::string::npos);
  const TreeTopology t = load_topology(dir.file("t.json"));
  CHECK(t.num_qubits() == 17);
  CHECK(t.root().children.size() == 4);

  save_circuit(Circuit(1), dir.file("one.json"));
  REQUIRE(run({"plan", "--circuit", dir.file("one.json"), "--out", dir.file("one_t.json")}).code == 0);
  CHECK(load_topology(dir.file("one_t.json")).root() == TreeNodeSpec::leaf(0));
}

TEST_CASE("simulate reports an exact Bell pair", "[cli]") {
  TempDir dir;
  save_circuit(testing::bell_circuit(), dir.file("bell.json"));
  for (const std::string engine : {"ttn", "mps", "statevector"}) {
    const Result r = run({"simulate", "--circuit", dir.file("bell.json"), "--engine", engine,
                          "--metrics-out", dir.file("m.json"), "--state-out", dir.file("s.json")});
    REQUIRE(r.code == cli::kExitOk);
    const auto recs = records(dir.file("m.json"));
    REQUIRE(recs.size() == 1);
    CHECK(recs[0]["fidelity"].get<double>() >= 1.0 - 1e-12);
    CHECK(recs[0]["max_bond"].get<int>() <= 2);
    const auto state = nlohmann::json::parse(read_text_file(dir.file("s.json")));
    CHECK(state["num_qubits"] == 2);
    CHECK(state["amplitudes"].size() == 4);
  }
}

TEST_CASE("simulate sweeps thresholds", "[cli]") {
  TempDir dir;
  save_circuit(gen_random(8, 60, 2), dir.file("c.json"));
  const Result r = run({"simulate", "--circuit", dir.file("c.json"), "--sigma-rel", "0,1e-4,1e-2,0.3",
                        "--metrics-out", dir.file("m.json"), "--csv-out", dir.file("m.csv")});
  REQUIRE(r.code == cli::kExitOk);
  const auto recs = records(dir.file("m.json"));
  REQUIRE(recs.size() == 4);
  CHECK(recs[0]["overlap_error"].get<double>() <= 1e-10);
  CHECK(recs[3]["overlap_error"].get<double>() >= recs[0]["overlap_error"].get<double>());
  const std::string csv = read_text_file(dir.file("m.csv"));
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
  CHECK(csv.rfind("engine,num_qubits,num_gates,sigma_rel,cap,", 0) == 0);
}

TEST_CASE("CLI outputs are reproducible apart from timing", "[cli]") {
  TempDir dir;
  REQUIRE(run({"gen", "random", "--qubits", "7", "--gates", "40", "--seed", "11", "--out", dir.file("c.json")}).code == 0);
  for (const std::string engine : {"ttn", "mps"}) {
    for (const std::string name : {"a", "b"}) {
      REQUIRE(run({"simulate", "--circuit", dir.file("c.json"), "--engine", engine, "--sigma-rel", "0,1e-3",
                   "--seed", "5", "--csv-out", dir.file(name + ".csv")})
                  .code == 0);
    }
    CHECK(without_timing(read_text_file(dir.file("a.csv"))) ==
          without_timing(read_text_file(dir.file("b.csv"))));
  }
  for (const std::string name : {"a", "b"}) {
    REQUIRE(run({"dryrun", "--circuit", dir.file("c.json"), "--clusters", "2", "--out",
                 dir.file(name + "_d.json"), "--csv-out", dir.file(name + "_d.csv")})
                .code == 0);
  }
  CHECK(read_text_file(dir.file("a_d.json")) == read_text_file(dir.file("b_d.json")));
  CHECK(read_text_file(dir.file("a_d.csv")) == read_text_file(dir.file("b_d.csv")));
}

TEST_CASE("dryrun on the triangle pattern", "[cli]") {
  TempDir dir;
  REQUIRE(run({"gen", "triangle", "--levels", "2", "--dmax", "64", "--out", dir.file("c.json"),
               "--topology-out", dir.file("t.json")})
              .code == 0);
  const Result tree = run({"dryrun", "--circuit", dir.file("c.json"), "--topology", dir.file("t.json"),
                           "--dmax", "64", "--out", dir.file("r.json")});
  REQUIRE(tree.code == cli::kExitOk);
  CHECK(tree.out.find("admissible=yes") != std::string::npos);
  const auto report = nlohmann::json::parse(read_text_file(dir.file("r.json")));
  CHECK(report["max_bond"].get<int>() <= 64);
  CHECK(report["admissibility"]["admissible"] == true);

  const Result chain = run({"dryrun", "--circuit", dir.file("c.json"), "--mps", "--dmax", "64"});
  REQUIRE(chain.code == cli::kExitOk);
  CHECK(chain.out.find("within_d_max=no") != std::string::npos);
}

TEST_CASE("compare reports overlap and saved memory", "[cli]") {
  TempDir dir;
  save_circuit(gen_random(8, 60, 9), dir.file("c.json"));
  const Result same = run({"compare", "--circuit", dir.file("c.json"), "--engine-a", "ttn", "--engine-b", "mps"});
  REQUIRE(same.code == cli::kExitOk);
  const double error = std::stod(same.out.substr(same.out.find('=') + 1));
  CHECK(error <= 1e-9);

  const Result cut = run({"compare", "--circuit", dir.file("c.json"), "--sigma-rel-b", "0.3",
                          "--out", dir.file("cmp.json")});
  REQUIRE(cut.code == cli::kExitOk);
  const auto doc = nlohmann::json::parse(read_text_file(dir.file("cmp.json")));
  CHECK(doc["overlap_error"].get<double>() > 0.0);
  CHECK(doc["m_saved"].get<double>() > 0.0);

  for (const std::string name : {"a", "b"}) {
    REQUIRE(run({"simulate", "--circuit", dir.file("c.json"), "--engine", name == "a" ? "ttn" : "statevector",
                 "--state-out", dir.file(name + ".json")})
                .code == 0);
  }
  const Result files = run({"compare", "--state-a", dir.file("a.json"), "--state-b", dir.file("b.json")});
  REQUIRE(files.code == cli::kExitOk);
  CHECK(std::stod(files.out.substr(files.out.find('=') + 1)) <= 1e-9);
}

TEST_CASE("exit codes", "[cli][errors]") {
  TempDir dir;
  CHECK(run({"simulate", "--circuit", dir.file("missing.json")}).code == cli::kExitValidation);
  write_text_file(dir.file("bad.json"), "{\"num_qubits\": 2, \"gates\": [");
  const Result bad = run({"simulate", "--circuit", dir.file("bad.json")});
  CHECK(bad.code == cli::kExitValidation);
  CHECK(bad.err.find("error") != std::string::npos);
  CHECK(run({"gen", "spiral", "--out", dir.file("x.json")}).code == cli::kExitValidation);
  CHECK(run({"bogus"}).code == cli::kExitValidation);
  CHECK(run({"--help"}).code == cli::kExitOk);

  save_circuit(gen_random(8, 40, 1), dir.file("c.json"));
  const Result capped = run({"simulate", "--circuit", dir.file("c.json"), "--memory-cap", "20"});
  CHECK(capped.code == cli::kExitMemory);
  CHECK(run({"simulate", "--circuit", dir.file("c.json"), "--sigma-rel", "1.5"}).code == cli::kExitValidation);
}
