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

#include <stdexcept>
#include <string>

namespace ttnsim {

// Bad input: malformed files, out-of-range indices, inconsistent shapes.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A dense factorization (SVD/QR) did not converge. `location` names the
// node or site being factorized when known, -1 otherwise.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what, int location = -1)
      : std::runtime_error(what), location_(location) {}
  int location() const { return location_; }

 private:
  int location_;
};

// Raised instead of silently truncating when a state would exceed the
// configured entry budget.
class MemoryCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ttnsim
