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

#include <vector>

#include "ttnsim/circuit.hpp"
#include "ttnsim/topology.hpp"

namespace ttnsim {

/// Exact pairwise similarity: shared two-qubit gate count plus 1/den, where
/// den is the summed two-qubit gate count of both qubits. den == 0 means 0.
struct Similarity {
  int shared = 0;
  int den = 0;

  double value() const { return den == 0 ? 0.0 : shared + 1.0 / den; }
  // Exact comparison without floating point.
  bool operator<(const Similarity& o) const;
  bool operator==(const Similarity& o) const;
};

class SimilarityMatrix {
 public:
  explicit SimilarityMatrix(int n) : n_(n), entries_(static_cast<std::size_t>(n) * n) {}

  int size() const { return n_; }
  const Similarity& exact(int i, int j) const { return entries_[i * n_ + j]; }
  Similarity& exact(int i, int j) { return entries_[i * n_ + j]; }
  double operator()(int i, int j) const { return exact(i, j).value(); }

 private:
  int n_;
  std::vector<Similarity> entries_;
};

SimilarityMatrix similarity_matrix(const Circuit& c);

/// Deterministic average-linkage agglomerative clustering into `count`
/// clusters, no cluster larger than ceil(1.5 n / count). Clusters are sorted
/// by smallest member and each cluster is sorted ascending.
std::vector<std::vector<int>> cluster(const SimilarityMatrix& s, int count);

/// Groups qubits bottom-up by descending pair similarity, wrapping the
/// accumulated children into a new node whenever the similarity drops.
TreeNodeSpec create_subtree(const std::vector<int>& qubits, const SimilarityMatrix& s);
TreeNodeSpec create_subtree(const std::vector<int>& qubits, const Circuit& c);

TreeTopology find_tree_structure(const Circuit& c, int num_clusters);

/// Largest level l >= 0 with 2^(m^(l-1)) <= d_max.
int l_cluster(int arity, long long d_max);

}  // namespace ttnsim
