#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "maf/lp_model.hpp"
#include "maf/tree_pair.hpp"

namespace maf {

struct NamedInstance {
  std::string name;
  std::string t1_newick;
  std::string t2_newick;
  TreePair pair;
  std::optional<int> opt;        // MAF value
  std::optional<double> lp_opt;  // best known fractional value
};

NamedInstance fig1_instance();
NamedInstance fig9_instance();
// {"fig1", "fig9"}
std::vector<NamedInstance> fig_instances();

// Half on {1,2,3}, {1,5,8}, {4,6,7} and on every singleton except {1}.
std::vector<std::pair<std::vector<LeafId>, double>> fig9_fractional_sets(const TreePair& pair);
LpPoint fig9_fractional_point(const TreePair& pair);

// Complete binary trees of depth k. A T1 leaf is named by its root path
// (0 = left, 1 = right); in T2 the leaf at path s carries the reverse of s.
// Throws InputError unless k is even and 2 <= k <= 20.
TreePair wu_gap_instance(int k);
// 1/4 on every leaf edge of T1, 1/8 on the edges between depths k-2 and k-1.
// Keys are xe_<child node id>.
LpPoint wu_gap_fractional(const TreePair& pair, int k);

}  // namespace maf
