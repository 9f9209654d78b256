#include "maf/tree.hpp"

#include <unordered_set>

#include "maf/errors.hpp"

namespace maf {

NodeId RootedBinaryTree::find_leaf(std::string_view label) const {
  for (NodeId v : leaf_order_) {
    if (label_[v] == label) return v;
  }
  return kNoNode;
}

int TreeBuilder::add_leaf(std::string label) {
  if (label.empty()) throw InputError("empty leaf label");
  nodes_.push_back(Node{-1, -1, std::move(label)});
  return static_cast<int>(nodes_.size()) - 1;
}

int TreeBuilder::add_internal(int left, int right) {
  const int n = static_cast<int>(nodes_.size());
  if (left < 0 || right < 0 || left >= n || right >= n || left == right)
    throw InputError("bad child handle");
  nodes_.push_back(Node{left, right, {}});
  return n;
}

RootedBinaryTree TreeBuilder::build(int root) const {
  const int n = static_cast<int>(nodes_.size());
  if (root < 0 || root >= n) throw InputError("bad root handle");

  RootedBinaryTree t;
  t.parent_.assign(n, kNoNode);
  t.left_.assign(n, kNoNode);
  t.right_.assign(n, kNoNode);
  t.depth_.assign(n, 0);
  t.size_.assign(n, 1);
  t.leaf_begin_.assign(n, 0);
  t.leaf_end_.assign(n, 0);
  t.label_.assign(n, {});

  // builder handles are children-first, so sizes fill in one ascending pass
  std::vector<int> weight(n, 1);
  for (int h = 0; h < n; ++h)
    if (nodes_[h].left >= 0) weight[h] = 1 + weight[nodes_[h].left] + weight[nodes_[h].right];

  std::vector<int> new_id(n, -1);
  std::vector<char> seen(n, 0);
  std::unordered_set<std::string_view> labels;
  int next = 0;
  // explicit stack: (handle, expanded); the heavier child is numbered first,
  // which keeps a parent close to both children in id order
  std::vector<std::pair<int, bool>> stack{{root, false}};
  while (!stack.empty()) {
    auto [h, expanded] = stack.back();
    stack.pop_back();
    const Node& nd = nodes_[h];
    if (!expanded) {
      if (seen[h]) throw InputError("node reachable twice");
      seen[h] = 1;
      stack.push_back({h, true});
      if (nd.left >= 0) {
        const bool right_first = weight[nd.right] > weight[nd.left];
        stack.push_back({right_first ? nd.left : nd.right, false});
        stack.push_back({right_first ? nd.right : nd.left, false});
      }
      continue;
    }
    const int id = next++;
    new_id[h] = id;
    if (nd.left < 0) {
      if (!labels.insert(nd.label).second)
        throw InputError("duplicate leaf label '" + nd.label + "'");
      t.label_[id] = nd.label;
    } else {
      const int l = new_id[nd.left], r = new_id[nd.right];
      t.left_[id] = l;
      t.right_[id] = r;
      t.parent_[l] = id;
      t.parent_[r] = id;
      t.size_[id] = 1 + t.size_[l] + t.size_[r];
    }
  }
  if (next != n) throw InputError("builder holds nodes not reachable from the root");

  // leaves left to right
  std::vector<NodeId> walk{n - 1};
  while (!walk.empty()) {
    const NodeId v = walk.back();
    walk.pop_back();
    if (t.left_[v] == kNoNode) {
      t.leaf_begin_[v] = static_cast<int>(t.leaf_order_.size());
      t.leaf_end_[v] = t.leaf_begin_[v] + 1;
      t.leaf_order_.push_back(v);
    } else {
      walk.push_back(t.right_[v]);
      walk.push_back(t.left_[v]);
    }
  }
  for (NodeId v = 0; v < n; ++v)
    if (t.left_[v] != kNoNode) {
      t.leaf_begin_[v] = t.leaf_begin_[t.left_[v]];
      t.leaf_end_[v] = t.leaf_end_[t.right_[v]];
    }
  if (next != n) throw InputError("builder holds nodes not reachable from the root");
  for (int v = n - 2; v >= 0; --v) t.depth_[v] = t.depth_[t.parent_[v]] + 1;
  return t;
}

}  // namespace maf
