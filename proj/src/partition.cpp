#include "maf/partition.hpp"

#include <algorithm>
#include <atomic>
#include <string>

#include "maf/errors.hpp"

namespace maf {

Partition::Partition(const TreePair& pair)
    : pair_(&pair), comp_of_(pair.n(), 0), cut_above_(pair.t2().node_count(), 0) {
  std::vector<LeafId> all(pair.n());
  for (LeafId x = 0; x < pair.n(); ++x) all[x] = x;
  add_component(std::move(all));
}

Partition Partition::from_components(const TreePair& pair, const std::vector<std::vector<LeafId>>& blocks) {
  Partition p(pair);
  p.leaves_.clear();
  p.gen_.clear();
  p.alive_.clear();
  p.size_.clear();
  p.live_ids_.clear();
  p.free_ids_.clear();
  p.live_ = 0;
  std::vector<int> hits(pair.n(), 0);
  for (const auto& b : blocks) {
    if (b.empty()) throw InputError("empty block");
    for (LeafId x : b) {
      if (x < 0 || x >= pair.n()) throw InputError("leaf id out of range");
      ++hits[x];
    }
    std::vector<LeafId> sorted = b;
    std::sort(sorted.begin(), sorted.end());
    p.add_component(std::move(sorted));
  }
  for (LeafId x = 0; x < pair.n(); ++x)
    if (hits[x] != 1) throw InputError("blocks do not partition the leaf set (leaf " + pair.label(x) + ")");
  try {
    p.recompute_cuts();
  } catch (const InvariantError&) {
    throw InputError("blocks overlap in the second tree");
  }
  if (!v2_disjoint(p)) throw InputError("blocks overlap in the second tree");
  return p;
}

void Partition::touch() {
  static std::atomic<uint64_t> next{0};
  stamp_ = ++next;
}

ComponentId Partition::add_component(std::vector<LeafId> leaves) {
  touch();
  ComponentId id;
  if (free_ids_.empty()) {
    id = static_cast<ComponentId>(leaves_.size());
    leaves_.emplace_back();
    size_.push_back(0);
    gen_.push_back(0);
    alive_.push_back(0);
  } else {
    id = free_ids_.back();
    free_ids_.pop_back();
  }
  for (LeafId x : leaves) comp_of_[x] = id;
  size_[id] = static_cast<int>(leaves.size());
  leaves_[id] = std::move(leaves);
  gen_[id] = generation_;
  alive_[id] = 1;
  live_stale_ = true;
  ++live_;
  return id;
}

void Partition::retire(ComponentId c) {
  touch();
  alive_[c] = 0;
  size_[c] = 0;
  std::vector<LeafId>().swap(leaves_[c]);
  free_ids_.push_back(c);
  live_stale_ = true;
  --live_;
}

std::vector<ComponentId> Partition::live_components() const {
  if (live_stale_) {
    live_ids_.clear();
    for (ComponentId c = 0; c < id_bound(); ++c)
      if (alive_[c]) live_ids_.push_back(c);
    live_stale_ = false;
  }
  return live_ids_;
}

std::pair<ComponentId, ComponentId> Partition::split_below(NodeId u) {
  const RootedBinaryTree& t2 = pair_->t2();
  if (u < 0 || u >= t2.node_count()) throw InputError("node id out of range");
  if (u == t2.root()) throw InputError("cannot split above the root of the second tree");
  if (cut_above_[u]) throw InputError("edge above node " + std::to_string(u) + " already deleted");

  std::vector<std::pair<ComponentId, int>> counts;
  for (NodeId leaf : t2.leaves_below(u)) {
    const ComponentId c = comp_of_[pair_->leaf_at(2, leaf)];
    auto it = std::find_if(counts.begin(), counts.end(), [c](const auto& e) { return e.first == c; });
    if (it == counts.end())
      counts.push_back({c, 1});
    else
      ++it->second;
  }
  ComponentId a = kNoComponent;
  for (auto [c, k] : counts) {
    if (k == component_size(c)) continue;
    if (a != kNoComponent) throw InvariantError("two components cross node " + std::to_string(u));
    a = c;
  }
  if (a == kNoComponent)
    throw InputError("no component has leaves both below and outside node " + std::to_string(u));

  std::vector<LeafId> inside, outside;
  for (LeafId x : leaves_[a])
    (t2.is_ancestor_or_self(u, pair_->leaf_node(2, x)) ? inside : outside).push_back(x);
  cut_above_[u] = 1;
  retire(a);
  const ComponentId in = add_component(std::move(inside));
  const ComponentId out = add_component(std::move(outside));
  return {in, out};
}

std::vector<ComponentId> Partition::refine(ComponentId c, const std::vector<std::vector<LeafId>>& blocks) {
  if (c < 0 || c >= id_bound() || !alive(c)) throw InputError("refine of a dead component");
  if (blocks.size() < 2) throw InputError("refine needs at least two blocks");
  const RootedBinaryTree& t2 = pair_->t2();
  size_t total = 0;
  std::vector<NodeId> top(blocks.size());
  for (size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i].empty()) throw InputError("refine with an empty block");
    for (LeafId x : blocks[i])
      if (comp_of_[x] != c) throw InputError("block leaf outside the refined component");
    total += blocks[i].size();
    top[i] = pair_->lca_of(2, blocks[i]);
  }
  if (total != leaves_[c].size()) throw InputError("blocks do not partition the component");

  size_t keep = 0;
  for (size_t i = 1; i < blocks.size(); ++i) {
    const int di = t2.depth(top[i]), dk = t2.depth(top[keep]);
    if (di < dk || (di == dk && top[i] < top[keep])) keep = i;
  }
  for (size_t i = 0; i < blocks.size(); ++i) {
    if (i == keep) continue;
    if (top[i] == t2.root() || cut_above_[top[i]])
      throw InvariantError("blocks of a refinement overlap in the second tree");
    cut_above_[top[i]] = 1;
  }
  retire(c);
  std::vector<ComponentId> ids;
  for (const auto& b : blocks) {
    std::vector<LeafId> sorted = b;
    std::sort(sorted.begin(), sorted.end());
    ids.push_back(add_component(std::move(sorted)));
  }
  return ids;
}

ComponentId Partition::merge(ComponentId a, ComponentId b) {
  if (a == b) throw InvariantError("merging a component with itself");
  if (!alive(a) || !alive(b)) throw InputError("merge of a dead component");
  std::vector<LeafId> u;
  u.reserve(leaves_[a].size() + leaves_[b].size());
  std::merge(leaves_[a].begin(), leaves_[a].end(), leaves_[b].begin(),
             leaves_[b].end(), std::back_inserter(u));
  retire(a);
  retire(b);
  return add_component(std::move(u));
}

void Partition::recompute_cuts() {
  const RootedBinaryTree& t2 = pair_->t2();
  std::fill(cut_above_.begin(), cut_above_.end(), 0);
  std::vector<NodeId> tops;
  NodeId keep = kNoNode;
  for (ComponentId c : live_components()) {
    const NodeId v = pair_->lca_of(2, leaves_[c]);
    tops.push_back(v);
    if (keep == kNoNode || t2.depth(v) < t2.depth(keep) || (t2.depth(v) == t2.depth(keep) && v < keep))
      keep = v;
  }
  for (NodeId v : tops) {
    if (v == keep) continue;
    if (cut_above_[v]) throw InvariantError("two components share a top node in the second tree");
    cut_above_[v] = 1;
  }
}

std::vector<NodeId> Partition::deleted_edges() const {
  std::vector<NodeId> out;
  for (NodeId v = 0; v < static_cast<NodeId>(cut_above_.size()); ++v)
    if (cut_above_[v]) out.push_back(v);
  return out;
}

std::vector<std::vector<LeafId>> Partition::components_from_cuts() const {
  const RootedBinaryTree& t2 = pair_->t2();
  std::vector<int> region(t2.node_count(), 0);
  int regions = 1;
  for (NodeId v = t2.root() - 1; v >= 0; --v)
    region[v] = cut_above_[v] ? regions++ : region[t2.parent(v)];
  std::vector<std::vector<LeafId>> out(regions);
  for (LeafId x = 0; x < pair_->n(); ++x) out[region[pair_->leaf_node(2, x)]].push_back(x);
  std::erase_if(out, [](const auto& b) { return b.empty(); });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<LeafId>> Partition::blocks() const {
  std::vector<std::vector<LeafId>> out;
  for (ComponentId c : live_components()) out.push_back(leaves_[c]);
  std::sort(out.begin(), out.end());
  return out;
}

Annotations2 annotate(const Partition& p, const std::vector<Color>* coloring) {
  Annotations2 a;
  annotate_into(p, coloring, a);
  return a;
}

namespace {

template <bool Colored>
void annotate_pass(const Partition& p, const Color* color, Annotations2& a) {
  const TreePair& pair = p.pair();
  const RootedBinaryTree& t2 = pair.t2();
  const int m = t2.node_count();
  auto* node = a.node.data();
  auto* counts = a.counts.data();
  for (NodeId v = 0; v < m; ++v) {
    const NodeId l = t2.left(v);
    if (l == kNoNode) {
      const LeafId x = pair.leaf_at(2, v);
      const ComponentId c = p.component_of(x);
      node[v] = {c, p.component_size(c) - 1};
      if constexpr (Colored) counts[v] = {color[x] == kRed, color[x] == kBlue};
      continue;
    }
    const NodeId r = t2.right(v);
    const Annotations2::Node nl = node[l], nr = node[r];
    const bool el = nl.rest > 0, er = nr.rest > 0;
    if (el && er && nl.comp == nr.comp) {
      // nr.rest counts nl's leaves too
      node[v] = {nl.comp, nl.rest + nr.rest - p.component_size(nl.comp)};
      if constexpr (Colored) counts[v] = {counts[l][0] + counts[r][0], counts[l][1] + counts[r][1]};
    } else if (el && !er) {
      node[v] = nl;
      if constexpr (Colored) counts[v] = counts[l];
    } else if (er && !el) {
      node[v] = nr;
      if constexpr (Colored) counts[v] = counts[r];
    } else {
      if (el && er && a.overlap_at == kNoNode) a.overlap_at = v;
      node[v] = {};
      if constexpr (Colored) counts[v] = {0, 0};
    }
  }
}

}  // namespace

void annotate_into(const Partition& p, const std::vector<Color>* coloring, Annotations2& a) {
  const TreePair& pair = p.pair();
  // every node entry is overwritten, so no clearing
  a.node.resize(pair.t2().node_count());
  a.overlap_at = kNoNode;
  a.partition = &p;
  if (!coloring) {
    a.counts.clear();
    a.comp_color.clear();
    annotate_pass<false>(p, nullptr, a);
    return;
  }
  a.counts.resize(pair.t2().node_count());
  a.comp_color.resize(p.id_bound());
  for (LeafId x = 0; x < pair.n(); ++x) a.comp_color[p.component_of(x)] = {0, 0, 0};
  for (LeafId x = 0; x < pair.n(); ++x) ++a.comp_color[p.component_of(x)][(*coloring)[x]];
  annotate_pass<true>(p, coloring->data(), a);
}

const Annotations2& annotate_cached(const Partition& p, const std::vector<Color>* coloring) {
  struct Cache {
    uint64_t stamp = 0;
    std::vector<Color> coloring;
    bool colored = false;
    Annotations2 ann;
  };
  // one slot keeps the footprint small; a colored entry also answers plain
  // requests for the same partition
  thread_local Cache c;
  const bool hit = c.stamp == p.stamp() && (!coloring || (c.colored && c.coloring == *coloring));
  if (!hit) {
    annotate_into(p, coloring, c.ann);
    c.stamp = p.stamp();
    c.colored = coloring != nullptr;
    if (coloring) c.coloring = *coloring;
  }
  return c.ann;
}

bool v2_disjoint(const Partition& p) { return annotate(p).overlap_at == kNoNode; }

namespace {

// Marks V_t[block] for each block; false on the first node claimed twice.
// When `within` is non-null only nodes flagged there count.
bool spans_disjoint(const TreePair& pair, int t, const std::vector<std::vector<LeafId>>& blocks,
                    const std::vector<char>* within) {
  std::vector<char> owned(pair.tree(t).node_count(), 0);
  for (const auto& b : blocks) {
    for (NodeId v : pair.spanned_nodes(t, b)) {
      if (within && !(*within)[v]) continue;
      if (owned[v]) return false;
      owned[v] = 1;
    }
  }
  return true;
}

}  // namespace

bool is_feasible_maf(const TreePair& pair, const std::vector<std::vector<LeafId>>& blocks) {
  for (const auto& b : blocks)
    if (!pair.set_compatible(b)) return false;
  return spans_disjoint(pair, 1, blocks, nullptr) && spans_disjoint(pair, 2, blocks, nullptr);
}

bool is_K_feasible(const TreePair& pair, const std::vector<std::vector<LeafId>>& blocks,
                   std::span<const LeafId> k) {
  std::vector<char> in_k(pair.n(), 0);
  for (LeafId x : k) in_k[x] = 1;
  for (const auto& b : blocks) {
    // a triple of b lies in some b ∩ (K ∪ {w}) iff two of its leaves are in K
    std::vector<LeafId> bk;
    for (LeafId x : b)
      if (in_k[x]) bk.push_back(x);
    for (size_t i = 0; i < bk.size(); ++i)
      for (size_t j = i + 1; j < bk.size(); ++j)
        for (LeafId z : b)
          if (z != bk[i] && z != bk[j] && !pair.triple_compatible(bk[i], bk[j], z)) return false;
  }
  std::vector<char> within(pair.t1().node_count(), 0);
  for (NodeId v : pair.spanned_nodes(1, k)) within[v] = 1;
  return spans_disjoint(pair, 2, blocks, nullptr) && spans_disjoint(pair, 1, blocks, &within);
}

}  // namespace maf
