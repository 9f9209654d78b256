#include <array>
#include <string>
#include <vector>

#include "maf/errors.hpp"
#include "maf/generators.hpp"

namespace maf {

namespace {

// Pointer-free mutable tree used while shuffling topology.
struct Shape {
  std::vector<int> parent;
  std::vector<std::array<int, 2>> child;
  std::vector<std::string> label;
  int root = -1;

  int add(std::string l) {
    parent.push_back(-1);
    child.push_back({-1, -1});
    label.push_back(std::move(l));
    return static_cast<int>(parent.size()) - 1;
  }
  bool leaf(int v) const { return child[v][0] < 0; }

  void replace_child(int p, int from, int to) {
    if (p < 0) {
      root = to;
    } else {
      child[p][child[p][0] == from ? 0 : 1] = to;
    }
    parent[to] = p;
  }

  // Puts a fresh internal node w on the edge above v, with children v and x.
  void attach_above(int v, int w, int x, bool x_first) {
    replace_child(parent[v], v, w);
    child[w] = x_first ? std::array<int, 2>{x, v} : std::array<int, 2>{v, x};
    parent[v] = w;
    parent[x] = w;
  }

  static Shape from(const RootedBinaryTree& t) {
    Shape s;
    for (NodeId v = 0; v < t.node_count(); ++v) s.add(t.is_leaf(v) ? t.label(v) : std::string());
    for (NodeId v = 0; v < t.node_count(); ++v) {
      s.parent[v] = t.parent(v);
      if (!t.is_leaf(v)) s.child[v] = {t.left(v), t.right(v)};
    }
    s.root = t.root();
    return s;
  }

  RootedBinaryTree to_tree() const {
    TreeBuilder b;
    std::vector<int> id(parent.size(), -1);
    std::vector<std::pair<int, bool>> stack{{root, false}};
    while (!stack.empty()) {
      auto [v, expanded] = stack.back();
      stack.pop_back();
      if (leaf(v)) {
        id[v] = b.add_leaf(label[v]);
      } else if (expanded) {
        id[v] = b.add_internal(id[child[v][0]], id[child[v][1]]);
      } else {
        stack.push_back({v, true});
        stack.push_back({child[v][1], false});
        stack.push_back({child[v][0], false});
      }
    }
    return b.build(id[root]);
  }

  bool in_subtree(int v, int top) const {
    for (; v >= 0; v = parent[v])
      if (v == top) return true;
    return false;
  }
};

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

}  // namespace

RootedBinaryTree random_tree(int n, Rng& rng) {
  if (n < 1) throw InputError("a tree needs at least one leaf");
  Shape s;
  s.root = s.add("1");
  for (int i = 2; i <= n; ++i) {
    const int v = uniform(rng, 0, static_cast<int>(s.parent.size()) - 1);
    const int x = s.add(std::to_string(i));
    const int w = s.add("");
    s.attach_above(v, w, x, uniform(rng, 0, 1) == 1);
  }
  return s.to_tree();
}

RootedBinaryTree random_spr(const RootedBinaryTree& tree, int k, Rng& rng) {
  Shape s = Shape::from(tree);
  const int nodes = static_cast<int>(s.parent.size());
  if (nodes < 5) return tree;  // two leaves or fewer: no move changes anything
  for (int move = 0; move < k; ++move) {
    while (true) {
      const int v = uniform(rng, 0, nodes - 1);
      if (v == s.root) continue;
      const int p = s.parent[v];
      const int sib = s.child[p][s.child[p][0] == v ? 1 : 0];
      std::vector<int> targets;
      for (int w = 0; w < nodes; ++w)
        if (w != p && w != sib && !s.in_subtree(w, v)) targets.push_back(w);
      if (targets.empty()) continue;
      const int w = targets[uniform(rng, 0, static_cast<int>(targets.size()) - 1)];
      // prune: the sibling takes p's place, then p is reused above w
      s.replace_child(s.parent[p], p, sib);
      s.attach_above(w, p, v, uniform(rng, 0, 1) == 1);
      break;
    }
  }
  return s.to_tree();
}

TreePair random_pair(int n, uint64_t seed, GenMode mode) {
  if (n < 2) throw InputError("random instances need n >= 2");
  if (mode.kind == GenMode::kRspr && (mode.k < 0 || mode.k >= n))
    throw InputError("rSPR mode needs 0 <= k < n (got k=" + std::to_string(mode.k) + ")");
  Rng rng(seed);
  RootedBinaryTree t1 = random_tree(n, rng);
  RootedBinaryTree t2 = mode.kind == GenMode::kUniform ? random_tree(n, rng) : random_spr(t1, mode.k, rng);
  return TreePair::make(std::move(t1), std::move(t2));
}

}  // namespace maf
