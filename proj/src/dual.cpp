#include "maf/dual.hpp"

#include <algorithm>
#include <string>

#include "maf/errors.hpp"

namespace maf {

DualState::DualState(const TreePair& pair) : pair_(&pair) {
  y_[0].assign(pair.t1().node_count(), 0);
  y_[1].assign(pair.t2().node_count(), 0);
}

void DualState::decrement_y(int tree, NodeId v) {
  if (sealed_) throw InvariantError("dual state is sealed");
  if (tree != 1 && tree != 2) throw InputError("tree index must be 1 or 2");
  if (v < 0 || v >= static_cast<NodeId>(y_[tree - 1].size())) throw InputError("node id out of range");
  if (pair_->tree(tree).is_leaf(v)) throw InputError("y is only defined on internal nodes");
  --y_[tree - 1][v];
  --sum_;
}

int64_t dual_objective(const DualState& state, int components) { return state.sum_y() + components - 1; }

int64_t load(const DualState& state, const Partition& p, std::span<const LeafId> l) {
  const TreePair& pair = p.pair();
  if (!pair.set_compatible(l)) throw InputError("load is only defined on compatible sets");
  int64_t total = 0;
  for (int t = 1; t <= 2; ++t)
    for (NodeId v : pair.spanned_nodes(t, l))
      if (!pair.tree(t).is_leaf(v)) total += state.y(t, v);
  std::vector<ComponentId> seen;
  for (LeafId x : l) {
    const ComponentId c = p.component_of(x);
    if (std::find(seen.begin(), seen.end(), c) == seen.end()) seen.push_back(c);
  }
  return total + static_cast<int64_t>(seen.size());
}

bool check_balance(const DualState& state, const Partition& p, int pairs) {
  return 2 * dual_objective(state, p) >= static_cast<int64_t>(p.size()) - 1 - pairs;
}

void for_each_compatible_set(const TreePair& pair, int max_size,
                             const std::function<bool(std::span<const LeafId>)>& visit) {
  const int n = pair.n();
  if (max_size <= 0 || max_size > n) max_size = n;
  std::vector<LeafId> cur;
  bool stop = false;
  // depth-first: cur is compatible; try every larger leaf as the next member
  std::function<void(LeafId)> grow = [&](LeafId from) {
    for (LeafId x = from; x < n && !stop; ++x) {
      bool ok = true;
      for (size_t i = 0; i < cur.size() && ok; ++i)
        for (size_t j = i + 1; j < cur.size() && ok; ++j) ok = pair.triple_compatible(cur[i], cur[j], x);
      if (!ok) continue;
      cur.push_back(x);
      if (!visit(cur)) stop = true;
      if (!stop && static_cast<int>(cur.size()) < max_size) grow(x + 1);
      cur.pop_back();
    }
  };
  grow(0);
}

bool verify_dual_feasibility(const DualState& state, const Partition& p, int size_cap, int n_cap) {
  const TreePair& pair = p.pair();
  if (pair.n() > n_cap)
    throw SizeGateError("dual feasibility enumeration refuses n=" + std::to_string(pair.n()) + " > " +
                        std::to_string(n_cap));
  bool ok = true;
  for_each_compatible_set(pair, size_cap, [&](std::span<const LeafId> l) {
    ok = load(state, p, l) <= 1;
    return ok;
  });
  return ok;
}

}  // namespace maf
