#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <string>

#include "maf/errors.hpp"
#include "maf/oracle.hpp"

namespace maf {

int oracle_cap() {
  if (const char* env = std::getenv("MAF_ORACLE_CAP")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(std::min<long>(v, kOracleCeiling));
  }
  return kDefaultOracleCap;
}

namespace {

struct Search {
  const TreePair& pair;
  int n;
  std::vector<uint64_t> path[2];  // path[t][x*n+y]: nodes on the x..y path
  std::vector<int> block_of;
  std::vector<std::vector<LeafId>> blocks;
  std::vector<uint64_t> span[2];
  int best;
  std::vector<int> best_assignment;
  long long visited = 0;

  explicit Search(const TreePair& p) : pair(p), n(p.n()), block_of(p.n(), -1), best(p.n() - 1) {
    for (int t = 0; t < 2; ++t) {
      const RootedBinaryTree& tr = pair.tree(t + 1);
      path[t].assign(static_cast<size_t>(n) * n, 0);
      for (LeafId x = 0; x < n; ++x)
        for (LeafId y = 0; y < n; ++y) {
          const NodeId top = pair.lca_leaves(t + 1, x, y);
          uint64_t mask = uint64_t{1} << top;
          for (NodeId v : {pair.leaf_node(t + 1, x), pair.leaf_node(t + 1, y)})
            for (; v != top; v = tr.parent(v)) mask |= uint64_t{1} << v;
          path[t][static_cast<size_t>(x) * n + y] = mask;
        }
    }
    best_assignment.resize(n);
    for (LeafId x = 0; x < n; ++x) best_assignment[x] = x;
  }

  bool fits(int b, LeafId x, uint64_t grown[2]) const {
    const auto& members = blocks[b];
    for (size_t i = 0; i < members.size(); ++i)
      for (size_t j = i + 1; j < members.size(); ++j)
        if (!pair.triple_compatible(members[i], members[j], x)) return false;
    for (int t = 0; t < 2; ++t) {
      grown[t] = span[t][b] | path[t][static_cast<size_t>(x) * n + members.front()];
      for (size_t o = 0; o < blocks.size(); ++o)
        if (static_cast<int>(o) != b && (grown[t] & span[t][o])) return false;
    }
    return true;
  }

  bool fresh_fits(LeafId x) const {
    const uint64_t bit[2] = {uint64_t{1} << pair.leaf_node(1, x), uint64_t{1} << pair.leaf_node(2, x)};
    for (int t = 0; t < 2; ++t)
      for (uint64_t s : span[t])
        if (s & bit[t]) return false;
    return true;
  }

  void run(LeafId x) {
    ++visited;
    if (x == n) {
      const int value = static_cast<int>(blocks.size()) - 1;
      if (value < best) {
        best = value;
        best_assignment = block_of;
      }
      return;
    }
    for (int b = 0; b < static_cast<int>(blocks.size()); ++b) {
      uint64_t grown[2];
      if (!fits(b, x, grown)) continue;
      const uint64_t saved[2] = {span[0][b], span[1][b]};
      blocks[b].push_back(x);
      span[0][b] = grown[0];
      span[1][b] = grown[1];
      block_of[x] = b;
      run(x + 1);
      blocks[b].pop_back();
      span[0][b] = saved[0];
      span[1][b] = saved[1];
    }
    // a new block only pays off while the value stays below the incumbent
    if (static_cast<int>(blocks.size()) < best && fresh_fits(x)) {
      blocks.push_back({x});
      span[0].push_back(uint64_t{1} << pair.leaf_node(1, x));
      span[1].push_back(uint64_t{1} << pair.leaf_node(2, x));
      block_of[x] = static_cast<int>(blocks.size()) - 1;
      run(x + 1);
      blocks.pop_back();
      span[0].pop_back();
      span[1].pop_back();
    }
    block_of[x] = -1;
  }
};

}  // namespace

ExactResult exact_maf(const TreePair& pair, int cap) {
  if (cap <= 0) cap = oracle_cap();
  cap = std::min(cap, kOracleCeiling);
  if (pair.n() > cap)
    throw SizeGateError("exact oracle refuses n=" + std::to_string(pair.n()) + " > " + std::to_string(cap) +
                        " (raise MAF_ORACLE_CAP)");
  ExactResult out;
  if (pair.n() == 0) return out;
  Search s(pair);
  s.run(0);
  out.value = s.best;
  out.forest.assign(s.best + 1, {});
  for (LeafId x = 0; x < pair.n(); ++x) out.forest[s.best_assignment[x]].push_back(x);
  std::erase_if(out.forest, [](const auto& b) { return b.empty(); });
  out.nodes_visited = s.visited;
  return out;
}

}  // namespace maf
