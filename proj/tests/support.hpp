#pragma once

// Helpers and slow, definition-level oracles shared by the unit tests. None
// of these call into the library beyond reading tree shape.

#include <algorithm>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "maf/partition.hpp"
#include "maf/tree.hpp"
#include "maf/tree_pair.hpp"

namespace maf::test {

inline TreePair pair_of(const std::string& t1, const std::string& t2, bool rho = false) {
  return TreePair::make(parse_newick(t1), parse_newick(t2), rho);
}

inline std::vector<LeafId> ids(const TreePair& pair, std::initializer_list<const char*> labels) {
  std::vector<LeafId> out;
  for (const char* l : labels) out.push_back(pair.leaf_id(l));
  std::sort(out.begin(), out.end());
  return out;
}

using Blocks = std::vector<std::vector<LeafId>>;

inline Blocks blocks_of(const TreePair& pair, std::initializer_list<std::initializer_list<const char*>> sets) {
  Blocks out;
  for (auto s : sets) out.push_back(ids(pair, s));
  std::sort(out.begin(), out.end());
  return out;
}

inline Blocks sorted(Blocks b) {
  for (auto& x : b) std::sort(x.begin(), x.end());
  std::sort(b.begin(), b.end());
  return b;
}

// lca by walking parents
inline NodeId naive_lca(const RootedBinaryTree& t, NodeId u, NodeId v) {
  while (t.depth(u) > t.depth(v)) u = t.parent(u);
  while (t.depth(v) > t.depth(u)) v = t.parent(v);
  while (u != v) {
    u = t.parent(u);
    v = t.parent(v);
  }
  return u;
}

inline NodeId naive_lca(const TreePair& pair, int t, const std::vector<LeafId>& a) {
  NodeId v = pair.leaf_node(t, a[0]);
  for (LeafId x : a) v = naive_lca(pair.tree(t), v, pair.leaf_node(t, x));
  return v;
}

inline std::vector<NodeId> path_nodes(const RootedBinaryTree& t, NodeId u, NodeId v) {
  const NodeId a = naive_lca(t, u, v);
  std::vector<NodeId> out{a};
  for (NodeId x : {u, v})
    for (; x != a; x = t.parent(x)) out.push_back(x);
  return out;
}

// V_t[A] from pairwise paths
inline std::set<NodeId> naive_span(const TreePair& pair, int t, const std::vector<LeafId>& a) {
  std::set<NodeId> out;
  if (a.size() == 1) out.insert(pair.leaf_node(t, a[0]));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = i + 1; j < a.size(); ++j)
      for (NodeId v : path_nodes(pair.tree(t), pair.leaf_node(t, a[i]), pair.leaf_node(t, a[j]))) out.insert(v);
  return out;
}

// Canonical text of the tree restricted to `keep` (suppressing unary nodes).
inline std::string restricted_shape(const TreePair& pair, int t, const std::vector<LeafId>& keep) {
  const RootedBinaryTree& tree = pair.tree(t);
  std::vector<char> in(pair.n(), 0);
  for (LeafId x : keep) in[x] = 1;
  std::function<std::string(NodeId)> rec = [&](NodeId v) -> std::string {
    if (tree.is_leaf(v)) return in[pair.leaf_at(t, v)] ? tree.label(v) : "";
    std::string l = rec(tree.left(v)), r = rec(tree.right(v));
    if (l.empty()) return r;
    if (r.empty()) return l;
    if (r < l) std::swap(l, r);
    return "(" + l + "," + r + ")";
  };
  return rec(tree.root());
}

inline bool naive_compatible(const TreePair& pair, const std::vector<LeafId>& a) {
  return restricted_shape(pair, 1, a) == restricted_shape(pair, 2, a);
}

inline bool naive_feasible(const TreePair& pair, const Blocks& blocks) {
  for (const auto& b : blocks)
    if (!naive_compatible(pair, b)) return false;
  for (int t = 1; t <= 2; ++t) {
    std::set<NodeId> seen;
    for (const auto& b : blocks)
      for (NodeId v : naive_span(pair, t, b))
        if (!seen.insert(v).second) return false;
  }
  return true;
}

// Calls visit on every set partition of 0..n-1.
inline void for_each_partition(int n, const std::function<void(const Blocks&)>& visit) {
  Blocks cur;
  std::function<void(int)> rec = [&](int x) {
    if (x == n) {
      visit(cur);
      return;
    }
    for (size_t i = 0; i < cur.size(); ++i) {
      cur[i].push_back(x);
      rec(x + 1);
      cur[i].pop_back();
    }
    cur.push_back({x});
    rec(x + 1);
    cur.pop_back();
  };
  rec(0);
}

// min |P| - 1 over feasible partitions, by full enumeration (n <= 8)
inline int naive_maf(const TreePair& pair) {
  int best = pair.n() - 1;
  for_each_partition(pair.n(), [&](const Blocks& b) {
    if (static_cast<int>(b.size()) - 1 < best && naive_feasible(pair, b)) best = static_cast<int>(b.size()) - 1;
  });
  return best;
}

inline std::vector<LeafId> leaves_under(const TreePair& pair, int t, NodeId v) {
  std::vector<LeafId> out;
  for (NodeId x : pair.tree(t).leaves_below(v)) out.push_back(pair.leaf_at(t, x));
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<LeafId> intersect(const std::vector<LeafId>& a, const std::vector<LeafId>& b) {
  std::vector<LeafId> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// Which clauses of the root-of-infeasibility definition hold at T1 node u.
struct PcsClauses {
  bool a = false, b = false, c = false;
  bool any() const { return a || b || c; }
};

inline PcsClauses naive_pcs(const TreePair& pair, const Blocks& blocks, NodeId u) {
  PcsClauses out;
  const RootedBinaryTree& t1 = pair.t1();
  const std::vector<LeafId> below = leaves_under(pair, 1, u);
  std::set<NodeId> sub;
  for (NodeId v = u - t1.subtree_size(u) + 1; v <= u; ++v) sub.insert(v);
  std::set<NodeId> seen;
  for (const auto& a : blocks) {
    const std::vector<LeafId> in = intersect(a, below);
    if (!naive_compatible(pair, in)) out.a = true;
    for (NodeId v : naive_span(pair, 1, a))
      if (sub.count(v) && !seen.insert(v).second) out.b = true;
    if (in.size() < a.size()) {
      bool all_bad = true;
      for (LeafId w : a) {
        if (std::binary_search(below.begin(), below.end(), w)) continue;
        std::vector<LeafId> with = in;
        with.push_back(w);
        std::sort(with.begin(), with.end());
        if (naive_compatible(pair, with)) all_bad = false;
      }
      if (all_bad) out.c = true;
    }
  }
  return out;
}

}  // namespace maf::test
