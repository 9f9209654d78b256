#include <algorithm>
#include <vector>

#include "maf/errors.hpp"
#include "maf/redblue.hpp"

namespace maf {
namespace {

// Components reaching one node: two inline, the rare rest in a side list.
struct Reach {
  ComponentId first = kNoComponent;
  ComponentId second = kNoComponent;
  int more = -1;
};

class ReachSets {
 public:
  void reset(int nodes) {
    for (NodeId v : touched_) sets_[v] = {};
    touched_.clear();
    sets_.resize(nodes);
    extra_.clear();
  }

  bool empty(NodeId v) const { return sets_[v].first == kNoComponent; }
  int size(NodeId v) const {
    const Reach& r = sets_[v];
    if (r.second == kNoComponent) return r.first == kNoComponent ? 0 : 1;
    return 2 + (r.more >= 0 ? static_cast<int>(extra_[r.more].size()) : 0);
  }
  ComponentId at(NodeId v, int i) const {
    const Reach& r = sets_[v];
    return i == 0 ? r.first : i == 1 ? r.second : extra_[r.more][i - 2];
  }
  void add(NodeId v, ComponentId c) {
    Reach& r = sets_[v];
    if (r.first == kNoComponent) {
      r.first = c;
      touched_.push_back(v);
    } else if (r.first == c) {
      return;
    } else if (r.second == kNoComponent || r.second == c) {
      r.second = c;
    } else {
      if (r.more < 0) {
        r.more = static_cast<int>(extra_.size());
        extra_.emplace_back();
      }
      auto& rest = extra_[r.more];
      if (std::find(rest.begin(), rest.end(), c) == rest.end()) rest.push_back(c);
    }
  }

 private:
  std::vector<Reach> sets_;
  std::vector<std::vector<ComponentId>> extra_;
  std::vector<NodeId> touched_;
};

}  // namespace

std::optional<MergePair> find_merge_pair(const Partition& p, const Coloring& c,
                                         const std::vector<ComponentId>& origin, int generation) {
  const TreePair& pair = p.pair();
  const RootedBinaryTree& t2 = pair.t2();
  const Annotations2& ann = annotate_cached(p, nullptr);
  const int m = t2.node_count();

  // unicolored red or blue components created in this iteration
  thread_local std::vector<int> colour;
  colour.resize(p.id_bound());
  for (ComponentId a : p.live_components()) {
    colour[a] = -1;
    if (p.generation(a) != generation) continue;
    const Color first = c.color[p.leaves(a).front()];
    if (first == kWhite) continue;
    const bool uni = std::all_of(p.leaves(a).begin(), p.leaves(a).end(), [&](LeafId x) { return c.color[x] == first; });
    if (uni) colour[a] = first;
  }
  auto qualifies = [&](ComponentId a) { return a != kNoComponent && colour[a] >= 0; };
  auto origin_of = [&](ComponentId a) { return origin[p.leaves(a).front()]; };
  auto make = [&](ComponentId a, ComponentId b, char rule) {
    const LeafId x = p.leaves(a).front(), y = p.leaves(b).front();
    return MergePair{std::min(x, y), std::max(x, y), rule};
  };

  // bottom-up: reach[v] = qualifying components that can reach v, i.e. cover
  // v or sit below it with every node strictly between uncovered
  thread_local ReachSets reach;
  reach.reset(m);
  bool mixed = false;  // some uncovered node is reached by two components
  for (NodeId v = 0; v < m; ++v) {
    const ComponentId cov = ann.comp(v);
    if (qualifies(cov)) reach.add(v, cov);
    if (!t2.is_leaf(v)) {
      for (NodeId ch : {t2.left(v), t2.right(v)}) {
        if (reach.empty(ch)) continue;
        const ComponentId via = ann.comp(ch);
        for (int i = 0, k = reach.size(ch); i < k; ++i)
          if (via == kNoComponent || via == reach.at(ch, i)) reach.add(v, reach.at(ch, i));
      }
    }
    const int k = reach.size(v);
    if (k < 2) continue;
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j) {
        const ComponentId a = reach.at(v, i), b = reach.at(v, j);
        if (colour[a] == colour[b] && origin_of(a) == origin_of(b)) return make(a, b, 'b');
      }
    if (cov == kNoComponent) mixed = true;
  }
  if (!mixed) return std::nullopt;

  // top-down: stop below nodes covered by a qualifying component; an
  // uncovered node reached by a red and a blue component gives a pair
  thread_local std::vector<char> blocked;
  blocked.resize(m);  // written top-down before any read
  for (NodeId v = t2.root(); v >= 0; --v) {
    blocked[v] = (v != t2.root() && blocked[t2.parent(v)]) || qualifies(ann.comp(v));
    if (blocked[v] || ann.comp(v) != kNoComponent) continue;
    const int k = reach.size(v);
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j) {
        const ComponentId a = reach.at(v, i), b = reach.at(v, j);
        if (colour[a] != colour[b] && origin_of(a) == origin_of(b)) return make(a, b, 'c');
      }
  }
  return std::nullopt;
}

void merge_components(Partition& p, const std::vector<MergePair>& pairs) {
  if (pairs.empty()) return;
  for (const MergePair& m : pairs) {
    const ComponentId a = p.component_of(m.x1), b = p.component_of(m.x2);
    if (a == b) throw InvariantError("recorded pair already shares a component");
    p.merge(a, b);
  }
  p.recompute_cuts();
  if (!is_feasible(p)) throw InvariantError("merging the recorded pairs produced an infeasible forest");
}

}  // namespace maf
