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
#include <vector>

namespace ttnsim {

/// A node of a rooted tree description: a leaf carrying a qubit index, or an
/// internal node with an ordered list of children.
struct TreeNodeSpec {
  int qubit = -1;
  std::vector<TreeNodeSpec> children;

  static TreeNodeSpec leaf(int q) { return TreeNodeSpec{q, {}}; }
  static TreeNodeSpec internal(std::vector<TreeNodeSpec> children) {
    return TreeNodeSpec{-1, std::move(children)};
  }
  bool is_leaf() const { return qubit >= 0; }
  bool operator==(const TreeNodeSpec&) const = default;
};

/// Rooted tree whose leaves are exactly the qubits 0..N-1 and whose internal
/// nodes all have at least two children. A single-qubit tree is a lone leaf.
class TreeTopology {
 public:
  explicit TreeTopology(TreeNodeSpec root);

  const TreeNodeSpec& root() const { return root_; }
  int num_qubits() const { return num_qubits_; }
  int max_arity() const;
  int height() const;
  // Qubits in left-to-right leaf order.
  std::vector<int> leaf_order() const;

  /// Perfect m-ary tree of the given height over qubits 0..m^height-1.
  static TreeTopology perfect(int arity, int height);

  bool operator==(const TreeTopology&) const = default;

 private:
  TreeNodeSpec root_;
  int num_qubits_ = 0;
};

/// {"leaf": q} or {"children": [node, ...]}.
std::string topology_to_string(const TreeTopology& t);
TreeTopology topology_from_string(const std::string& text);
void save_topology(const TreeTopology& t, const std::filesystem::path& path);
TreeTopology load_topology(const std::filesystem::path& path);

/// Indexed form of a topology used by the engines. Nodes are numbered in
/// pre-order, so the root is node 0 and children follow their parent.
struct FlatNode {
  int parent = -1;
  int slot = -1;  // position among the parent's children
  std::vector<int> children;
  int qubit = -1;
  int height = 0;  // 0 for leaves
  int depth = 0;   // 0 for the root

  bool is_leaf() const { return qubit >= 0; }
};

class FlatTree {
 public:
  explicit FlatTree(const TreeTopology& topology);

  const std::vector<FlatNode>& nodes() const { return nodes_; }
  const FlatNode& node(int id) const { return nodes_[id]; }
  int size() const { return static_cast<int>(nodes_.size()); }
  int root() const { return 0; }
  int leaf_of(int qubit) const { return qubit_to_node_[qubit]; }
  int num_qubits() const { return static_cast<int>(qubit_to_node_.size()); }

  /// Children before parents, children in order.
  const std::vector<int>& post_order() const { return post_order_; }

  /// Level of the edge above `node` (leaf edges are level 1).
  int edge_level(int node) const { return nodes_[node].height + 1; }

  struct Path {
    std::vector<int> from_a;  // leaf a up to, not including, the turning node
    std::vector<int> from_b;
    int turning = -1;
  };
  /// Tree path between two distinct nodes.
  Path path(int a, int b) const;

  /// Number of leaves in the subtree of each node.
  int leaves_below(int node) const { return leaves_below_[node]; }

 private:
  std::vector<FlatNode> nodes_;
  std::vector<int> qubit_to_node_;
  std::vector<int> post_order_;
  std::vector<int> leaves_below_;
};

}  // namespace ttnsim
