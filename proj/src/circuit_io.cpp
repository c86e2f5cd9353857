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

#include "ttnsim/circuit_io.hpp"

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "ttnsim/errors.hpp"

namespace ttnsim {

using nlohmann::json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  std::string s(buf);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

std::string circuit_to_string(const Circuit& c) {
  std::ostringstream out;
  out << "{\n  \"num_qubits\": " << c.num_qubits() << ",\n  \"gates\": [";
  for (std::size_t g = 0; g < c.gates().size(); ++g) {
    const Gate& gate = c.gates()[g];
    out << (g == 0 ? "\n" : ",\n") << "    {\"label\": " << json(gate.label).dump()
        << ", \"qubits\": [";
    for (std::size_t i = 0; i < gate.qubits.size(); ++i) {
      out << (i ? ", " : "") << gate.qubits[i];
    }
    out << "], \"matrix\": [";
    const auto data = gate.matrix.data();
    for (std::size_t i = 0; i < data.size(); ++i) {
      out << (i ? ", " : "") << "[" << format_double(data[i].real()) << ", "
          << format_double(data[i].imag()) << "]";
    }
    out << "]}";
  }
  out << (c.gates().empty() ? "]\n}\n" : "\n  ]\n}\n");
  return out.str();
}

Circuit circuit_from_string(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("malformed circuit document: ") + e.what());
  }
  try {
    if (!doc.is_object()) throw ValidationError("circuit document must be an object");
    const json& nq = doc.at("num_qubits");
    if (!nq.is_number_integer()) throw ValidationError("num_qubits must be an integer");
    Circuit c(nq.get<int>());
    const json& gates = doc.at("gates");
    if (!gates.is_array()) throw ValidationError("gates must be an array");
    for (const json& g : gates) {
      const std::string label = g.at("label").get<std::string>();
      std::vector<int> qubits;
      for (const json& q : g.at("qubits")) {
        if (!q.is_number_integer()) throw ValidationError("qubit index must be an integer");
        qubits.push_back(q.get<int>());
      }
      const json& m = g.at("matrix");
      const std::size_t expected = qubits.size() == 1 ? 4 : 16;
      if (!m.is_array() || m.size() != expected) {
        throw ValidationError("gate '" + label + "' matrix must have " +
                              std::to_string(expected) + " entries");
      }
      std::vector<cplx> data;
      data.reserve(expected);
      for (const json& z : m) {
        if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
          throw ValidationError("matrix entries must be [re, im] pairs");
        }
        data.emplace_back(z[0].get<double>(), z[1].get<double>());
      }
      const std::size_t dim = qubits.size() == 1 ? 2 : 4;
      c.add(make_gate(label, std::move(qubits),
                      ComplexTensor({dim, dim}, std::move(data))));
    }
    return c;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed circuit document: ") + e.what());
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path.string());
  out << text;
}

void save_circuit(const Circuit& c, const std::filesystem::path& path) {
  write_text_file(path, circuit_to_string(c));
}

Circuit load_circuit(const std::filesystem::path& path) {
  return circuit_from_string(read_text_file(path));
}

}  // namespace ttnsim
