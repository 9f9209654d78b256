#pragma once

#include <vector>

#include "maf/tree_pair.hpp"

namespace maf {

inline constexpr int kDefaultOracleCap = 10;
// Hard ceiling regardless of configuration (node masks are 64-bit).
inline constexpr int kOracleCeiling = 32;

// kDefaultOracleCap, or MAF_ORACLE_CAP when set to a positive integer.
int oracle_cap();

struct ExactResult {
  int value = 0;  // |forest| - 1
  std::vector<std::vector<LeafId>> forest;
  long long nodes_visited = 0;
};

// Minimum |P| - 1 over set partitions that are agreement forests, by
// restricted-growth enumeration pruned on incompatible triples, span overlap
// and the incumbent. Throws SizeGateError above cap (oracle_cap() when cap
// is 0).
ExactResult exact_maf(const TreePair& pair, int cap = 0);

}  // namespace maf
