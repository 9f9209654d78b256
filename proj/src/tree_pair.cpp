#include "maf/tree_pair.hpp"

#include <algorithm>
#include <set>

#include "maf/errors.hpp"

namespace maf {

RootedBinaryTree with_sibling_leaf(const RootedBinaryTree& tree, const std::string& label) {
  TreeBuilder b;
  std::vector<int> handle(tree.node_count());
  for (NodeId v = 0; v < tree.node_count(); ++v) {
    handle[v] = tree.is_leaf(v) ? b.add_leaf(tree.label(v))
                                : b.add_internal(handle[tree.left(v)], handle[tree.right(v)]);
  }
  const int extra = b.add_leaf(label);
  return b.build(b.add_internal(handle[tree.root()], extra));
}

TreePair TreePair::make(RootedBinaryTree t1, RootedBinaryTree t2, bool add_rho) {
  std::set<std::string> l1, l2;
  for (NodeId v : t1.leaf_order()) l1.insert(t1.label(v));
  for (NodeId v : t2.leaf_order()) l2.insert(t2.label(v));
  if (l1 != l2) {
    std::string msg = "leaf label sets differ; only in first tree: {";
    std::vector<std::string> d;
    std::set_difference(l1.begin(), l1.end(), l2.begin(), l2.end(), std::back_inserter(d));
    for (size_t i = 0; i < d.size(); ++i) msg += (i ? "," : "") + d[i];
    msg += "}; only in second tree: {";
    d.clear();
    std::set_difference(l2.begin(), l2.end(), l1.begin(), l1.end(), std::back_inserter(d));
    for (size_t i = 0; i < d.size(); ++i) msg += (i ? "," : "") + d[i];
    throw InputError(msg + "}");
  }
  if (add_rho) {
    if (l1.contains("rho")) throw InputError("cannot add rho: a leaf is already labelled 'rho'");
    t1 = with_sibling_leaf(t1, "rho");
    t2 = with_sibling_leaf(t2, "rho");
  }

  TreePair p;
  p.t1_ = std::move(t1);
  p.t2_ = std::move(t2);
  p.rho_added_ = add_rho;
  const int n = p.t1_.leaf_count();
  for (NodeId v : p.t1_.leaf_order()) {
    p.by_label_.emplace(p.t1_.label(v), static_cast<LeafId>(p.labels_.size()));
    p.labels_.push_back(p.t1_.label(v));
  }
  for (int t = 0; t < 2; ++t) {
    const RootedBinaryTree& tr = t == 0 ? p.t1_ : p.t2_;
    p.leaf_node_[t].assign(n, kNoNode);
    p.leaf_at_[t].assign(tr.node_count(), kNoLeaf);
    for (NodeId v : tr.leaf_order()) {
      const LeafId x = p.by_label_.at(tr.label(v));
      p.leaf_node_[t][x] = v;
      p.leaf_at_[t][v] = x;
    }
    p.lca_[t] = LcaIndex(tr);
  }
  return p;
}

LeafId TreePair::leaf_id(std::string_view label) const {
  auto it = by_label_.find(std::string(label));
  return it == by_label_.end() ? kNoLeaf : it->second;
}

NodeId TreePair::lca(int t, NodeId u, NodeId v) const {
  if (t != 1 && t != 2) throw InputError("tree index must be 1 or 2");
  return lca_[t - 1].lca(u, v);
}

NodeId TreePair::lca_of(int t, std::span<const LeafId> leaves) const {
  if (leaves.empty()) return kNoNode;
  // ids follow a depth-first order, so the extreme two decide
  NodeId lo = leaf_node(t, leaves[0]), hi = lo;
  for (size_t i = 1; i < leaves.size(); ++i) {
    const NodeId v = leaf_node(t, leaves[i]);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return lo == hi ? lo : lca_[t - 1].lca(lo, hi);
}

namespace {

// 0, 1 or 2: which of the pairs (x2,x3), (x1,x3), (x1,x2) joins below the
// other two, i.e. the leaf that is the outgroup of the triple.
int outgroup(const TreePair& p, int t, LeafId x1, LeafId x2, LeafId x3) {
  const int d12 = p.tree(t).depth(p.lca_leaves(t, x1, x2));
  const int d13 = p.tree(t).depth(p.lca_leaves(t, x1, x3));
  if (d12 > d13) return 2;
  if (d13 > d12) return 1;
  return 0;  // d12 == d13, so (x2,x3) is the deep pair
}

}  // namespace

bool TreePair::triple_compatible(LeafId x1, LeafId x2, LeafId x3) const {
  return outgroup(*this, 1, x1, x2, x3) == outgroup(*this, 2, x1, x2, x3);
}

bool TreePair::set_compatible(std::span<const LeafId> leaves) const {
  const size_t k = leaves.size();
  for (size_t i = 0; i < k; ++i)
    for (size_t j = i + 1; j < k; ++j)
      for (size_t l = j + 1; l < k; ++l)
        if (!triple_compatible(leaves[i], leaves[j], leaves[l])) return false;
  return true;
}

std::vector<NodeId> TreePair::spanned_nodes(int t, std::span<const LeafId> leaves) const {
  std::vector<NodeId> out;
  if (leaves.empty()) return out;
  if (leaves.size() == 1) return {leaf_node(t, leaves[0])};
  const RootedBinaryTree& tr = tree(t);
  const NodeId top = lca_of(t, leaves);
  std::vector<char> mark(tr.node_count(), 0);
  for (LeafId x : leaves) {
    for (NodeId v = leaf_node(t, x); !mark[v]; v = tr.parent(v)) {
      mark[v] = 1;
      out.push_back(v);
      if (v == top) break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool TreePair::sets_overlap(std::span<const LeafId> a, std::span<const LeafId> b, int t) const {
  for (int tt = 1; tt <= 2; ++tt) {
    if (t != 0 && t != tt) continue;
    const auto va = spanned_nodes(tt, a);
    const auto vb = spanned_nodes(tt, b);
    std::vector<NodeId> both;
    std::set_intersection(va.begin(), va.end(), vb.begin(), vb.end(), std::back_inserter(both));
    if (!both.empty()) return true;
  }
  return false;
}

}  // namespace maf
