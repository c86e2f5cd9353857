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

#include "ttnsim/tree_search.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <tuple>

#include "ttnsim/errors.hpp"

namespace ttnsim {

namespace {

// value * den as an exact fraction numerator: shared * den + 1 over den.
std::int64_t numerator(const Similarity& s) {
  return static_cast<std::int64_t>(s.shared) * s.den + 1;
}

}  // namespace

bool Similarity::operator<(const Similarity& o) const {
  if (den == 0 || o.den == 0) {
    if (o.den == 0) return false;  // nothing is below zero
    return true;                   // 0 < any positive value
  }
  return numerator(*this) * o.den < numerator(o) * den;
}

bool Similarity::operator==(const Similarity& o) const { return !(*this < o) && !(o < *this); }

SimilarityMatrix similarity_matrix(const Circuit& c) {
  const int n = c.num_qubits();
  std::vector<int> per_qubit(n, 0);
  std::vector<int> shared(static_cast<std::size_t>(n) * n, 0);
  for (const Gate& g : c.gates()) {
    if (g.arity() != 2) continue;
    const int a = g.qubits[0], b = g.qubits[1];
    ++per_qubit[a];
    ++per_qubit[b];
    ++shared[a * n + b];
    ++shared[b * n + a];
  }
  SimilarityMatrix s(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      s.exact(i, j) = Similarity{shared[i * n + j], per_qubit[i] + per_qubit[j]};
    }
  }
  return s;
}

std::vector<std::vector<int>> cluster(const SimilarityMatrix& s, int count) {
  const int n = s.size();
  if (count < 1 || count > n) throw ValidationError("cluster count out of range");
  const std::size_t cap = (3 * static_cast<std::size_t>(n) + 2 * count - 1) / (2 * count);

  std::vector<std::vector<int>> groups;
  for (int q = 0; q < n; ++q) groups.push_back({q});

  auto linkage = [&](const std::vector<int>& a, const std::vector<int>& b) {
    double total = 0.0;
    for (int i : a)
      for (int j : b) total += s(i, j);
    return total / static_cast<double>(a.size() * b.size());
  };

  while (static_cast<int>(groups.size()) > count) {
    int best_a = -1, best_b = -1;
    double best = -1.0;
    for (std::size_t a = 0; a < groups.size(); ++a) {
      for (std::size_t b = a + 1; b < groups.size(); ++b) {
        if (groups[a].size() + groups[b].size() > cap) continue;
        const double l = linkage(groups[a], groups[b]);
        if (l > best) {
          best = l;
          best_a = static_cast<int>(a);
          best_b = static_cast<int>(b);
        }
      }
    }
    if (best_a < 0) {
      // Size cap blocks every merge: join the two smallest groups.
      std::vector<int> order(groups.size());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
      std::stable_sort(order.begin(), order.end(),
                       [&](int x, int y) { return groups[x].size() < groups[y].size(); });
      best_a = std::min(order[0], order[1]);
      best_b = std::max(order[0], order[1]);
    }
    auto& into = groups[best_a];
    into.insert(into.end(), groups[best_b].begin(), groups[best_b].end());
    std::sort(into.begin(), into.end());
    groups.erase(groups.begin() + best_b);
  }
  std::sort(groups.begin(), groups.end(),
            [](const auto& x, const auto& y) { return x.front() < y.front(); });
  return groups;
}

namespace {

TreeNodeSpec wrap(std::vector<TreeNodeSpec> children) {
  if (children.size() == 1) return std::move(children.front());
  return TreeNodeSpec::internal(std::move(children));
}

}  // namespace

TreeNodeSpec create_subtree(const std::vector<int>& qubits, const SimilarityMatrix& s) {
  if (qubits.empty()) throw ValidationError("subtree needs at least one qubit");
  if (qubits.size() == 1) return TreeNodeSpec::leaf(qubits.front());

  struct Pair {
    Similarity sim;
    int lo, hi;
  };
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    for (std::size_t j = i + 1; j < qubits.size(); ++j) {
      const int a = std::min(qubits[i], qubits[j]);
      const int b = std::max(qubits[i], qubits[j]);
      pairs.push_back({s.exact(a, b), a, b});
    }
  }
  std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) {
    if (y.sim < x.sim) return true;
    if (x.sim < y.sim) return false;
    return std::tie(x.lo, x.hi) < std::tie(y.lo, y.hi);
  });

  std::vector<TreeNodeSpec> children;
  std::vector<int> seen;
  Similarity current = pairs.front().sim;
  for (const Pair& p : pairs) {
    if (p.sim < current) {
      children = {wrap(std::move(children))};
      current = p.sim;
    }
    for (int q : {p.lo, p.hi}) {
      if (std::find(seen.begin(), seen.end(), q) == seen.end()) {
        seen.push_back(q);
        children.push_back(TreeNodeSpec::leaf(q));
      }
    }
  }
  return wrap(std::move(children));
}

TreeNodeSpec create_subtree(const std::vector<int>& qubits, const Circuit& c) {
  return create_subtree(qubits, similarity_matrix(c));
}

TreeTopology find_tree_structure(const Circuit& c, int num_clusters) {
  const SimilarityMatrix s = similarity_matrix(c);
  std::vector<TreeNodeSpec> subtrees;
  for (const auto& group : cluster(s, num_clusters)) subtrees.push_back(create_subtree(group, s));
  return TreeTopology(wrap(std::move(subtrees)));
}

int l_cluster(int arity, long long d_max) {
  if (arity < 2 || d_max < 2) throw ValidationError("l_cluster needs arity >= 2 and d_max >= 2");
  long long log2_d = 0;
  while ((2LL << log2_d) <= d_max && log2_d < 62) ++log2_d;
  // Now 2^log2_d <= d_max; find largest l with arity^(l-1) <= log2_d.
  int level = 1;
  long long power = 1;  // arity^(level-1)
  while (power * arity <= log2_d) {
    power *= arity;
    ++level;
  }
  return level;
}

}  // namespace ttnsim
