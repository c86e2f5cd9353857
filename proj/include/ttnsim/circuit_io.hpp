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

#include <filesystem>
#include <string>

#include "ttnsim/circuit.hpp"

namespace ttnsim {

/// Circuit document:
///
///   {"num_qubits": N,
///    "gates": [{"label": "CX", "qubits": [0, 1],
///               "matrix": [[re, im], ...]}, ...]}
///
/// Matrices are row-major with 4 or 16 [re, im] pairs. Numbers are written
/// with 17 significant digits so save/load round-trips bit-exactly.
std::string circuit_to_string(const Circuit& c);
Circuit circuit_from_string(const std::string& text);

void save_circuit(const Circuit& c, const std::filesystem::path& path);
Circuit load_circuit(const std::filesystem::path& path);

/// "%.17g" with a forced decimal point, so -0.0 and integers stay doubles.
std::string format_double(double v);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace ttnsim
