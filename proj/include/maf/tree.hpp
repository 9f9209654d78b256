#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace maf {

using NodeId = int;
using LeafId = int;
inline constexpr NodeId kNoNode = -1;

// A rooted binary tree with dense node ids in post-order: every child has a
// smaller id than its parent, the root is the last node, and the subtree of
// v occupies the id range [v - subtree_size(v) + 1, v]. The larger child
// subtree is numbered first. leaf_order() lists the leaves left to right.
class RootedBinaryTree {
 public:
  RootedBinaryTree() = default;

  int node_count() const { return static_cast<int>(parent_.size()); }
  int leaf_count() const { return static_cast<int>(leaf_order_.size()); }
  NodeId root() const { return node_count() - 1; }

  NodeId parent(NodeId v) const { return parent_[v]; }
  NodeId left(NodeId v) const { return left_[v]; }
  NodeId right(NodeId v) const { return right_[v]; }
  bool is_leaf(NodeId v) const { return left_[v] == kNoNode; }
  int depth(NodeId v) const { return depth_[v]; }
  int subtree_size(NodeId v) const { return size_[v]; }

  // Label of a leaf node; empty for internal nodes.
  const std::string& label(NodeId v) const { return label_[v]; }

  // Leaf nodes, left to right.
  std::span<const NodeId> leaf_order() const { return leaf_order_; }
  // Leaf nodes below v, left to right.
  std::span<const NodeId> leaves_below(NodeId v) const {
    return std::span<const NodeId>(leaf_order_).subspan(leaf_begin_[v], leaf_end_[v] - leaf_begin_[v]);
  }
  int leaf_count_below(NodeId v) const { return leaf_end_[v] - leaf_begin_[v]; }

  // u ⪯ v: u equals v or is a descendant of v.
  bool is_ancestor_or_self(NodeId v, NodeId u) const { return u <= v && u > v - size_[v]; }
  // u ≺ v
  bool is_proper_ancestor(NodeId v, NodeId u) const { return u < v && u > v - size_[v]; }

  NodeId find_leaf(std::string_view label) const;

 private:
  friend class TreeBuilder;

  std::vector<NodeId> parent_;
  std::vector<NodeId> left_;
  std::vector<NodeId> right_;
  std::vector<int> depth_;
  std::vector<int> size_;
  std::vector<int> leaf_begin_;
  std::vector<int> leaf_end_;
  std::vector<std::string> label_;
  std::vector<NodeId> leaf_order_;
};

// Assembles a tree bottom-up. Nodes must be added children-first; the last
// node added becomes the root and ids are then renumbered into post-order.
class TreeBuilder {
 public:
  int add_leaf(std::string label);
  int add_internal(int left, int right);
  // Validates (single root, every node used exactly once, unique labels) and
  // produces the post-order numbered tree.
  RootedBinaryTree build(int root) const;

 private:
  struct Node {
    int left = -1;
    int right = -1;
    std::string label;
  };
  std::vector<Node> nodes_;
};

// Parses one rooted, strictly binary Newick tree. Internal labels and branch
// lengths are accepted and discarded; quoted labels are not supported.
RootedBinaryTree parse_newick(std::string_view text);

// Serializes with children ordered by their smallest leaf label, so equal
// topologies print identically regardless of input child order.
std::string to_newick(const RootedBinaryTree& tree, bool canonical = true);

}  // namespace maf
