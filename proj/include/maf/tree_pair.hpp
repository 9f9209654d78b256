#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "maf/lca.hpp"
#include "maf/tree.hpp"

namespace maf {

inline constexpr LeafId kNoLeaf = -1;

// Two rooted binary trees on one label set. Leaf ids follow T1's left-to-right
// order; T2 is matched by label. Trees are indexed 1 and 2 as in the text of
// the algorithm.
class TreePair {
 public:
  TreePair() = default;
  // Throws InputError when the label sets differ (message lists the
  // symmetric difference) or when add_rho is set and a leaf is already
  // called "rho".
  static TreePair make(RootedBinaryTree t1, RootedBinaryTree t2, bool add_rho = false);

  int n() const { return static_cast<int>(labels_.size()); }
  bool rho_added() const { return rho_added_; }
  LeafId rho() const { return rho_added_ ? n() - 1 : kNoLeaf; }

  const RootedBinaryTree& tree(int t) const { return t == 1 ? t1_ : t2_; }
  const RootedBinaryTree& t1() const { return t1_; }
  const RootedBinaryTree& t2() const { return t2_; }

  const std::string& label(LeafId x) const { return labels_[x]; }
  LeafId leaf_id(std::string_view label) const;
  NodeId leaf_node(int t, LeafId x) const { return leaf_node_[t - 1][x]; }
  // kNoLeaf for internal nodes.
  LeafId leaf_at(int t, NodeId v) const { return leaf_at_[t - 1][v]; }

  NodeId lca(int t, NodeId u, NodeId v) const;
  NodeId lca_leaves(int t, LeafId x, LeafId y) const {
    return lca_[t - 1].lca(leaf_node_[t - 1][x], leaf_node_[t - 1][y]);
  }
  // kNoNode for an empty set.
  NodeId lca_of(int t, std::span<const LeafId> leaves) const;

  bool triple_compatible(LeafId x1, LeafId x2, LeafId x3) const;
  // Every triple compatible. Cubic; meant for small sets and checking.
  bool set_compatible(std::span<const LeafId> leaves) const;

  // V_t[A] in ascending node order: nodes on a path between two leaves of A
  // (endpoint leaves included). A single leaf spans itself; the empty set
  // spans nothing.
  std::vector<NodeId> spanned_nodes(int t, std::span<const LeafId> leaves) const;

  // V[A] ∩ V[B] ≠ ∅, taken in tree t or, for t = 0, in both trees.
  bool sets_overlap(std::span<const LeafId> a, std::span<const LeafId> b, int t = 0) const;

 private:
  RootedBinaryTree t1_, t2_;
  bool rho_added_ = false;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, LeafId> by_label_;
  std::array<std::vector<NodeId>, 2> leaf_node_;
  std::array<std::vector<LeafId>, 2> leaf_at_;
  std::array<LcaIndex, 2> lca_;
};

// Returns a copy of the tree under a new root whose children are the old
// root and a new leaf with the given label.
RootedBinaryTree with_sibling_leaf(const RootedBinaryTree& tree, const std::string& label);

}  // namespace maf
