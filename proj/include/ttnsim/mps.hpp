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
#include <string>
#include <vector>

#include "ttnsim/circuit.hpp"
#include "ttnsim/tensor.hpp"
#include "ttnsim/ttn.hpp"

namespace ttnsim {

/// Matrix product state with sites (left, physical, right) in a fixed linear
/// order of the qubits. Boundary bonds have dimension 1. Long-range gates
/// are threaded through the intermediate sites, never swapped.
class MpsState {
 public:
  /// `order[s]` is the qubit stored at site s; empty means identity order.
  MpsState(int num_qubits, const std::vector<int>& bits, std::vector<int> order = {});

  int num_qubits() const { return static_cast<int>(sites_.size()); }
  const std::vector<int>& order() const { return order_; }
  int site_of(int qubit) const { return site_of_[qubit]; }
  const ComplexTensor& site(int s) const { return sites_[s]; }
  const SweepStats& stats() const { return stats_; }

  void set_memory_cap(std::size_t entries) { memory_cap_ = entries; }

  void apply_single_qubit(const Gate& g);
  /// Absorbs the split factors and threads the bond through the intermediate
  /// sites. The 1/sqrt(k) normalization sits on the lower site.
  void thread_two_qubit(const Gate& g);
  void apply_two_qubit(const Gate& g, const TruncationPolicy& policy);
  void apply(const Gate& g, const TruncationPolicy& policy);

  /// Left-to-right QR pass, then a right-to-left SVD pass that applies the
  /// policy to the Schmidt coefficients of each bond and drops numerical
  /// zeros. Ends right-canonical with a unit-norm first site.
  void orthonormalize(const TruncationPolicy& policy);

  std::vector<cplx> contract_to_statevector(int max_qubits = kDefaultContractCap) const;
  NetworkMetrics metrics() const;

  /// Right-canonical defect of sites 1..n-1 and |norm^2 - 1| at site 0.
  double canonical_defect() const;
  double norm() const;
  std::string dump() const;

 private:
  std::vector<ComplexTensor> sites_;
  std::vector<int> order_;
  std::vector<int> site_of_;
  std::size_t memory_cap_ = kDefaultMemoryCap;
  SweepStats stats_;
};

MpsState mps_init(int num_qubits, const std::vector<int>& bits, std::vector<int> order = {});

MpsState simulate_mps(const Circuit& c, const TruncationPolicy& policy,
                      std::vector<int> order = {}, std::vector<int> bits = {});

}  // namespace ttnsim
