#pragma once

#include <vector>

#include "maf/tree.hpp"

namespace maf {

// Euler tour plus a sparse table over first-occurrence depths. O(n log n)
// preprocessing, O(1) queries.
class LcaIndex {
 public:
  LcaIndex() = default;
  explicit LcaIndex(const RootedBinaryTree& tree);

  NodeId lca(NodeId u, NodeId v) const;

 private:
  NodeId argmin(NodeId a, NodeId b) const { return depth_[a] <= depth_[b] ? a : b; }

  std::vector<int> first_;
  std::vector<int> depth_;
  std::vector<int> log2_;
  // table_[k][i] = shallowest node of euler positions [i, i + 2^k)
  std::vector<std::vector<NodeId>> table_;
};

}  // namespace maf
