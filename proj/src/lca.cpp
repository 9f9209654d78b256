#include "maf/lca.hpp"

#include <utility>

#include "maf/errors.hpp"

namespace maf {

LcaIndex::LcaIndex(const RootedBinaryTree& tree) {
  const int n = tree.node_count();
  first_.assign(n, -1);
  depth_.resize(n);
  for (NodeId v = 0; v < n; ++v) depth_[v] = tree.depth(v);

  std::vector<NodeId> euler;
  euler.reserve(2 * n);
  std::vector<std::pair<NodeId, int>> stack{{tree.root(), 0}};
  while (!stack.empty()) {
    auto& [v, state] = stack.back();
    if (state == 0) first_[v] = static_cast<int>(euler.size());
    euler.push_back(v);
    if (tree.is_leaf(v) || state == 2) {
      stack.pop_back();
      continue;
    }
    const NodeId next = state == 0 ? tree.left(v) : tree.right(v);
    ++state;
    stack.push_back({next, 0});
  }

  const int m = static_cast<int>(euler.size());
  log2_.assign(m + 1, 0);
  for (int i = 2; i <= m; ++i) log2_[i] = log2_[i / 2] + 1;
  table_.assign(log2_[m] + 1, {});
  table_[0] = std::move(euler);
  for (int k = 1; k < static_cast<int>(table_.size()); ++k) {
    const int half = 1 << (k - 1);
    const auto& prev = table_[k - 1];
    auto& cur = table_[k];
    cur.resize(m - (1 << k) + 1);
    for (int i = 0; i < static_cast<int>(cur.size()); ++i) cur[i] = argmin(prev[i], prev[i + half]);
  }
}

NodeId LcaIndex::lca(NodeId u, NodeId v) const {
  const int n = static_cast<int>(first_.size());
  if (u < 0 || v < 0 || u >= n || v >= n) throw InputError("node id out of range");
  int a = first_[u], b = first_[v];
  if (a > b) std::swap(a, b);
  const int k = log2_[b - a + 1];
  return argmin(table_[k][a], table_[k][b - (1 << k) + 1]);
}

}  // namespace maf
