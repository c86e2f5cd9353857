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

#include "ttnsim/topology.hpp"

#include <algorithm>
#include <functional>
#include <json.hpp>

#include "ttnsim/circuit_io.hpp"
#include "ttnsim/errors.hpp"

namespace ttnsim {

using nlohmann::json;

namespace {

void collect_leaves(const TreeNodeSpec& n, std::vector<int>& out) {
  if (n.is_leaf()) {
    out.push_back(n.qubit);
    return;
  }
  for (const auto& c : n.children) collect_leaves(c, out);
}

void check_structure(const TreeNodeSpec& n) {
  if (n.is_leaf()) {
    if (!n.children.empty()) throw ValidationError("leaf node cannot have children");
    return;
  }
  if (n.qubit != -1) throw ValidationError("negative qubit index in topology");
  if (n.children.size() < 2) {
    throw ValidationError("internal tree node needs at least two children");
  }
  for (const auto& c : n.children) check_structure(c);
}

int height_of(const TreeNodeSpec& n) {
  int h = 0;
  for (const auto& c : n.children) h = std::max(h, height_of(c) + 1);
  return h;
}

int arity_of(const TreeNodeSpec& n) {
  int a = static_cast<int>(n.children.size());
  for (const auto& c : n.children) a = std::max(a, arity_of(c));
  return a;
}

json to_json(const TreeNodeSpec& n) {
  if (n.is_leaf()) return json{{"leaf", n.qubit}};
  json children = json::array();
  for (const auto& c : n.children) children.push_back(to_json(c));
  return json{{"children", children}};
}

TreeNodeSpec from_json(const json& j) {
  if (!j.is_object()) throw ValidationError("topology node must be an object");
  if (j.contains("leaf")) {
    if (j.size() != 1 || !j["leaf"].is_number_integer()) {
      throw ValidationError("leaf node must be {\"leaf\": <int>}");
    }
    const int q = j["leaf"].get<int>();
    if (q < 0) throw ValidationError("negative qubit index in topology");
    return TreeNodeSpec::leaf(q);
  }
  if (j.contains("children")) {
    if (j.size() != 1 || !j["children"].is_array()) {
      throw ValidationError("internal node must be {\"children\": [...]}");
    }
    std::vector<TreeNodeSpec> children;
    for (const json& c : j["children"]) children.push_back(from_json(c));
    return TreeNodeSpec::internal(std::move(children));
  }
  throw ValidationError("topology node needs \"leaf\" or \"children\"");
}

}  // namespace

TreeTopology::TreeTopology(TreeNodeSpec root) : root_(std::move(root)) {
  check_structure(root_);
  std::vector<int> leaves;
  collect_leaves(root_, leaves);
  std::vector<int> sorted = leaves;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] != static_cast<int>(i)) {
      throw ValidationError("topology leaves must be exactly the qubits 0..N-1");
    }
  }
  num_qubits_ = static_cast<int>(leaves.size());
}

int TreeTopology::max_arity() const { return arity_of(root_); }
int TreeTopology::height() const { return height_of(root_); }

std::vector<int> TreeTopology::leaf_order() const {
  std::vector<int> out;
  collect_leaves(root_, out);
  return out;
}

TreeTopology TreeTopology::perfect(int arity, int height) {
  if (arity < 2 || height < 0) throw ValidationError("perfect tree needs arity >= 2");
  int next = 0;
  std::function<TreeNodeSpec(int)> build = [&](int h) {
    if (h == 0) return TreeNodeSpec::leaf(next++);
    std::vector<TreeNodeSpec> children;
    for (int i = 0; i < arity; ++i) children.push_back(build(h - 1));
    return TreeNodeSpec::internal(std::move(children));
  };
  return TreeTopology(build(height));
}

std::string topology_to_string(const TreeTopology& t) {
  return to_json(t.root()).dump(2) + "\n";
}

TreeTopology topology_from_string(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("malformed topology document: ") + e.what());
  }
  return TreeTopology(from_json(doc));
}

void save_topology(const TreeTopology& t, const std::filesystem::path& path) {
  write_text_file(path, topology_to_string(t));
}

TreeTopology load_topology(const std::filesystem::path& path) {
  return topology_from_string(read_text_file(path));
}

FlatTree::FlatTree(const TreeTopology& topology) {
  qubit_to_node_.assign(topology.num_qubits(), -1);
  std::function<int(const TreeNodeSpec&, int, int, int)> add =
      [&](const TreeNodeSpec& spec, int parent, int slot, int depth) {
        const int id = static_cast<int>(nodes_.size());
        nodes_.push_back(FlatNode{parent, slot, {}, spec.qubit, 0, depth});
        if (spec.is_leaf()) {
          qubit_to_node_[spec.qubit] = id;
        } else {
          for (std::size_t i = 0; i < spec.children.size(); ++i) {
            const int child = add(spec.children[i], id, static_cast<int>(i), depth + 1);
            nodes_[id].children.push_back(child);
          }
        }
        return id;
      };
  add(topology.root(), -1, -1, 0);

  leaves_below_.assign(nodes_.size(), 0);
  std::function<void(int)> post = [&](int id) {
    for (int c : nodes_[id].children) post(c);
    int h = 0;
    int leaves = nodes_[id].is_leaf() ? 1 : 0;
    for (int c : nodes_[id].children) {
      h = std::max(h, nodes_[c].height + 1);
      leaves += leaves_below_[c];
    }
    nodes_[id].height = h;
    leaves_below_[id] = leaves;
    post_order_.push_back(id);
  };
  post(0);
}

FlatTree::Path FlatTree::path(int a, int b) const {
  if (a == b) throw ValidationError("path endpoints must differ");
  Path p;
  int x = a, y = b;
  while (nodes_[x].depth > nodes_[y].depth) {
    p.from_a.push_back(x);
    x = nodes_[x].parent;
  }
  while (nodes_[y].depth > nodes_[x].depth) {
    p.from_b.push_back(y);
    y = nodes_[y].parent;
  }
  while (x != y) {
    p.from_a.push_back(x);
    p.from_b.push_back(y);
    x = nodes_[x].parent;
    y = nodes_[y].parent;
  }
  p.turning = x;
  return p;
}

}  // namespace ttnsim
