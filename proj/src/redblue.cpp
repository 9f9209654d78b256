#include "maf/redblue.hpp"

#include <algorithm>
#include <string>

#include "maf/errors.hpp"

namespace maf {

std::optional<Pcs> find_lowest_pcs(const Partition& p) {
  const TreePair& pair = p.pair();
  const RootedBinaryTree& t1 = pair.t1();
  const RootedBinaryTree& t2 = pair.t2();
  const Annotations2& ann = annotate_cached(p, nullptr);
  if (ann.overlap_at != kNoNode) throw InvariantError("partition overlaps in the second tree");

  const int m = t1.node_count();
  // per T1 node: component continuing upward, lca2(A_u ∩ L(u)) and |A_u ∩ L(u)|
  struct Up {
    ComponentId comp;
    NodeId top;
    int s;
  };
  thread_local std::vector<Up> up;
  up.resize(m);
  auto covers_parent = [&](NodeId c) { return up[c].comp != kNoComponent && up[c].s < p.component_size(up[c].comp); };
  for (NodeId u = 0; u < m; ++u) {
    if (t1.is_leaf(u)) {
      const LeafId x = pair.leaf_at(1, u);
      up[u] = {p.component_of(x), pair.leaf_node(2, x), 1};
      continue;
    }
    const NodeId l = t1.left(u), r = t1.right(u);
    const bool cl = covers_parent(l), cr = covers_parent(r);
    if (!cl || !cr) {
      up[u] = cl ? up[l] : cr ? up[r] : Up{kNoComponent, kNoNode, 0};
      continue;
    }
    const Up ul = up[l], ur = up[r];
    if (ul.comp != ur.comp) return Pcs{u, 'b'};
    const ComponentId c = ul.comp;
    const NodeId top = pair.lca(2, ul.top, ur.top);
    up[u] = {c, top, ul.s + ur.s};
    if (!t2.is_proper_ancestor(top, ul.top) || !t2.is_proper_ancestor(top, ur.top)) return Pcs{u, 'a'};
    if (ann.comp(top) != c) throw InvariantError("T2 annotation disagrees with the T1 scan");
    if (ann.s(top) == p.component_size(c) && up[u].s < p.component_size(c)) return Pcs{u, 'c'};
  }
  return std::nullopt;
}

bool is_feasible(const Partition& p) { return v2_disjoint(p) && !find_lowest_pcs(p); }

Coloring make_coloring(const TreePair& pair, NodeId u, char condition) {
  const RootedBinaryTree& t1 = pair.t1();
  if (u < 0 || u >= t1.node_count() || t1.is_leaf(u)) throw InputError("coloring needs an internal node of T1");
  Coloring c;
  c.u = u;
  c.condition = condition;
  c.color.assign(pair.n(), kWhite);
  for (NodeId v : t1.leaves_below(t1.right(u))) c.color[pair.leaf_at(1, v)] = kRed;
  for (NodeId v : t1.leaves_below(t1.left(u))) c.color[pair.leaf_at(1, v)] = kBlue;
  c.red = t1.leaf_count_below(t1.right(u));
  c.blue = t1.leaf_count_below(t1.left(u));
  return c;
}

namespace {

// valid until the next call on this thread; entries of dead ids are stale
const std::vector<std::array<int, 3>>& color_counts(const Partition& p, const Coloring& c) {
  thread_local std::vector<std::array<int, 3>> out;
  thread_local uint64_t stamp = 0;
  thread_local const Coloring* coloring = nullptr;
  thread_local NodeId u = kNoNode;
  if (stamp == p.stamp() && coloring == &c && u == c.u) return out;
  stamp = p.stamp();
  coloring = &c;
  u = c.u;
  out.resize(p.id_bound());
  for (LeafId x = 0; x < p.pair().n(); ++x) out[p.component_of(x)] = {0, 0, 0};
  for (LeafId x = 0; x < p.pair().n(); ++x) ++out[p.component_of(x)][c.color[x]];
  return out;
}

int colors_in(const std::array<int, 3>& k) { return (k[0] > 0) + (k[1] > 0) + (k[2] > 0); }

std::vector<LeafId> rb_part(const Partition& p, ComponentId a, const Coloring& c) {
  std::vector<LeafId> out;
  for (LeafId x : p.leaves(a))
    if (c.in_rb(x)) out.push_back(x);
  return out;
}

// A ∩ (R ∪ B) is compatible iff lca2(A ∩ R) and lca2(A ∩ B) are
// incomparable (A ∩ R and A ∩ B are compatible on their own).
bool rb_compatible(const Partition& p, ComponentId a, const Coloring& c) {
  std::vector<LeafId> red, blue;
  for (LeafId x : p.leaves(a)) {
    if (c.color[x] == kRed) red.push_back(x);
    if (c.color[x] == kBlue) blue.push_back(x);
  }
  if (red.empty() || blue.empty()) return true;
  const TreePair& pair = p.pair();
  const NodeId rho = pair.lca_of(2, red), beta = pair.lca_of(2, blue);
  const RootedBinaryTree& t2 = pair.t2();
  return !t2.is_ancestor_or_self(rho, beta) && !t2.is_ancestor_or_self(beta, rho);
}

bool white_outside(const Partition& p, ComponentId a, const Coloring& c, NodeId v) {
  const TreePair& pair = p.pair();
  for (LeafId x : p.leaves(a))
    if (c.color[x] == kWhite && !pair.t2().is_ancestor_or_self(v, pair.leaf_node(2, x))) return true;
  return false;
}

bool white_inside(const Partition& p, ComponentId a, const Coloring& c, NodeId v) {
  const TreePair& pair = p.pair();
  for (LeafId x : p.leaves(a))
    if (c.color[x] == kWhite && pair.t2().is_ancestor_or_self(v, pair.leaf_node(2, x))) return true;
  return false;
}

void star(IterationScope& scope, int tree, NodeId v, const char* procedure) {
  if (scope.dual) scope.dual->decrement_y(tree, v);
  if (scope.stars) scope.stars->push_back({tree, v, procedure});
  if (scope.sink)
    scope.sink->emit({{"event", "star"}, {"iteration", scope.iteration}, {"procedure", procedure},
                      {"tree", tree}, {"node", v}});
}

void emit_split(IterationScope& scope, const Partition& p, const char* procedure, NodeId v,
                const std::vector<ComponentId>& parts) {
  if (!scope.sink) return;
  std::vector<std::vector<LeafId>> blocks;
  for (ComponentId c : parts) blocks.emplace_back(p.leaves(c).begin(), p.leaves(c).end());
  nlohmann::json rec{{"event", "split"}, {"iteration", scope.iteration}, {"procedure", procedure},
                     {"parts", blocks_json(p.pair(), blocks)}};
  rec["node"] = v == kNoNode ? nlohmann::json(nullptr) : nlohmann::json(v);
  scope.sink->emit(rec);
}

}  // namespace

Case classify_case(const Partition& p, const Coloring& c) {
  const auto& counts = color_counts(p, c);
  std::vector<ComponentId> multi;
  for (ComponentId a : p.live_components())
    if (colors_in(counts[a]) >= 2) multi.push_back(a);

  if (multi.size() == 2) {
    const auto &k0 = counts[multi[0]], &k1 = counts[multi[1]];
    if ((k0[kRed] == 0 && k1[kBlue] == 0) || (k1[kRed] == 0 && k0[kBlue] == 0)) return Case::kTwo;
  } else if (multi.size() == 1 && colors_in(counts[multi[0]]) == 3) {
    const ComponentId a = multi[0];
    const NodeId top = p.pair().lca_of(2, rb_part(p, a, c));
    const bool outside = white_outside(p, a, c, top);
    const bool compatible = rb_compatible(p, a, c);
    if (!compatible && outside) return Case::kOne;
    if (compatible && !outside) return Case::kThree;
  }
  throw InvariantError("coloring at node " + std::to_string(c.u) + " matches none of the three cases");
}

int make_rb_compatible(Partition& p, const Coloring& c, IterationScope& scope) {
  const RootedBinaryTree& t2 = p.pair().t2();
  int done = 0;
  while (true) {
    const Annotations2& ann = annotate_cached(p, &c.color);
    NodeId hit = kNoNode;
    for (NodeId v = 0; v < t2.node_count() && hit == kNoNode; ++v) {
      const ComponentId a = ann.comp(v);
      if (t2.is_leaf(v) || a == kNoComponent) continue;
      const int sr = ann.counts[v][kRed], sb = ann.counts[v][kBlue];
      if (sr >= 1 && sb >= 1 && !(sr == ann.comp_color[a][kRed] && sb == ann.comp_color[a][kBlue])) hit = v;
    }
    if (hit == kNoNode) return done;
    star(scope, 2, hit, "make-rb-compatible");
    auto [in, out] = p.split_below(hit);
    emit_split(scope, p, "make-rb-compatible", hit, {in, out});
    ++done;
  }
}

int make_splittable(Partition& p, const Coloring& c, IterationScope& scope) {
  const RootedBinaryTree& t2 = p.pair().t2();
  int done = 0;
  while (true) {
    const Annotations2& ann = annotate_cached(p, &c.color);
    NodeId hit = kNoNode;
    for (NodeId v = 0; v < t2.node_count() && hit == kNoNode; ++v) {
      const ComponentId a = ann.comp(v);
      if (t2.is_leaf(v) || a == kNoComponent) continue;
      const auto sc = ann.s_color(v);
      if (colors_in(sc) != 2) continue;
      bool rest_keeps_colors = true;
      for (int k = 0; k < 3; ++k)
        if (ann.comp_color[a][k] > 0 && sc[k] >= ann.comp_color[a][k]) rest_keeps_colors = false;
      if (rest_keeps_colors) hit = v;
    }
    if (hit == kNoNode) return done;
    star(scope, 2, hit, "make-splittable");
    auto [in, out] = p.split_below(hit);
    emit_split(scope, p, "make-splittable", hit, {in, out});
    ++done;
  }
}

SplitOutcome split(Partition& p, const Coloring& c, IterationScope& scope) {
  const TreePair& pair = p.pair();
  SplitOutcome outcome;
  auto by_color = [&](std::span<const LeafId> leaves) {
    std::vector<std::vector<LeafId>> parts(3);
    for (LeafId x : leaves) parts[c.color[x]].push_back(x);
    std::erase_if(parts, [](const auto& b) { return b.empty(); });
    return parts;
  };

  // counts of the ids listed below stay valid while refining: nothing in the
  // loop recounts
  const auto& counts = color_counts(p, c);
  for (ComponentId a : p.live_components()) {
    const int colors = colors_in(counts[a]);
    if (colors < 2) continue;

    if (colors == 3) {
      const NodeId top = pair.lca_of(2, rb_part(p, a, c));
      // a white leaf outside lca2(A ∩ (R ∪ B)) makes a compatible tricolored triple
      if (white_outside(p, a, c, top)) {
        if (!white_inside(p, a, c, top)) {
          // every tricolored triple is compatible: peel off the red part only
          std::vector<LeafId> red, rest;
          for (LeafId x : p.leaves(a)) (c.color[x] == kRed ? red : rest).push_back(x);
          const LeafId xr = red.front();
          const LeafId xb = *std::find_if(rest.begin(), rest.end(), [&](LeafId x) { return c.color[x] == kBlue; });
          const auto ids = p.refine(a, {red, rest});
          emit_split(scope, p, "special-split", kNoNode, ids);
          if (!outcome.undo_pair) outcome.undo_pair = MergePair{std::min(xr, xb), std::max(xr, xb), 'a'};
          ++outcome.refinements;
        } else {
          star(scope, 2, top, "special-split");
          auto [in, out] = p.split_below(top);
          std::vector<LeafId> inner(p.leaves(in).begin(), p.leaves(in).end());
          auto ids = p.refine(in, by_color(inner));
          ids.insert(ids.begin(), out);
          emit_split(scope, p, "special-split", top, ids);
          outcome.four_way.push_back(a);
          outcome.refinements += 3;
        }
        continue;
      }
    }
    std::vector<LeafId> leaves(p.leaves(a).begin(), p.leaves(a).end());
    const auto ids = p.refine(a, by_color(leaves));
    emit_split(scope, p, "split", kNoNode, ids);
    outcome.refinements += colors - 1;
  }
  return outcome;
}

namespace {

struct CountsAtIteration {
  int multicolored = 0;
  int tricolored = 0;
};

CountsAtIteration census(const Partition& p, const Coloring& c) {
  CountsAtIteration out;
  const auto& counts = color_counts(p, c);
  for (ComponentId a : p.live_components()) {
    const int k = colors_in(counts[a]);
    out.multicolored += k >= 2;
    out.tricolored += k == 3;
  }
  return out;
}

struct TopInfo {
  int tops = 0;
  int chi = 0;
  int t = 0;
};

// Among components created this iteration, a top component has an lca2 with
// no other new component's lca2 strictly above it.
TopInfo top_components(const Partition& p, const Coloring& c, int generation) {
  const TreePair& pair = p.pair();
  const RootedBinaryTree& t2 = pair.t2();
  thread_local std::vector<char> marked, above, is_top;
  thread_local std::vector<std::pair<ComponentId, NodeId>> fresh;
  marked.resize(t2.node_count());
  above.resize(t2.node_count());
  is_top.resize(p.id_bound());
  fresh.clear();
  const std::vector<ComponentId> live = p.live_components();
  for (ComponentId a : live) {
    is_top[a] = 0;
    if (p.generation(a) != generation) continue;
    const NodeId v = pair.lca_of(2, p.leaves(a));
    fresh.push_back({a, v});
    marked[v] = 1;
  }
  above[t2.root()] = 0;
  for (NodeId v = t2.root() - 1; v >= 0; --v) {
    const NodeId up = t2.parent(v);
    above[v] = above[up] || marked[up];
  }
  for (auto [a, v] : fresh) marked[v] = 0;
  TopInfo info;
  for (auto [a, v] : fresh) {
    if (above[v]) continue;
    is_top[a] = 1;
    ++info.tops;
  }
  const auto& counts = color_counts(p, c);
  for (ComponentId a : live) {
    if (colors_in(counts[a]) != 3) continue;
    if (!is_top[a]) {
      ++info.t;
      continue;
    }
    // tricolored triples (r, b, w) form rb|w in T1; with A ∩ (R ∪ B)
    // compatible every pair r, b meets at one node, so an incompatible
    // triple exists iff a white leaf sits below it
    if (white_inside(p, a, c, pair.lca_of(2, rb_part(p, a, c)))) ++info.chi;
  }
  return info;
}

std::vector<std::vector<LeafId>> merged_blocks(const Partition& p, const MergePair& m) {
  std::vector<std::vector<LeafId>> out;
  const ComponentId a = p.component_of(m.x1), b = p.component_of(m.x2);
  std::vector<LeafId> joined;
  for (ComponentId c : p.live_components()) {
    if (c == a || c == b)
      joined.insert(joined.end(), p.leaves(c).begin(), p.leaves(c).end());
    else
      out.emplace_back(p.leaves(c).begin(), p.leaves(c).end());
  }
  out.push_back(std::move(joined));
  return out;
}

nlohmann::json pair_json(const TreePair& pair, const std::optional<MergePair>& m) {
  if (!m) return nullptr;
  return {{"x1", pair.label(m->x1)}, {"x2", pair.label(m->x2)}, {"rule", std::string(1, m->rule)}};
}

}  // namespace

RedBlueResult run_red_blue(const TreePair& pair, const RunOptions& options) {
  RedBlueResult result;
  result.dual = DualState(pair);
  Partition p(pair);
  const bool deep_checks = options.strict && pair.n() <= options.strict_cap;
  auto fail = [&](const std::string& what) {
    if (options.strict) throw InvariantError(what);
  };

  int iteration = 0;
  while (pair.n() > 2) {
    const std::optional<Pcs> pcs = find_lowest_pcs(p);
    if (!pcs) break;
    ++iteration;
    p.set_generation(iteration);

    IterationRecord rec;
    rec.index = iteration;
    IterationScope scope{&result.dual, &rec.stars, options.sink, iteration};
    std::vector<ComponentId> origin(pair.n());
    for (LeafId x = 0; x < pair.n(); ++x) origin[x] = p.component_of(x);
    const int64_t d_before = dual_objective(result.dual, p);

    Coloring col = make_coloring(pair, pcs->u, pcs->condition);
    col.case_tag = classify_case(p, col);
    const Case expected = pcs->condition == 'a' ? Case::kOne : pcs->condition == 'b' ? Case::kTwo : Case::kThree;
    if (col.case_tag != expected)
      throw InvariantError("clause (" + std::string(1, pcs->condition) + ") led to case " +
                           std::to_string(static_cast<int>(col.case_tag)));
    const CountsAtIteration c0 = census(p, col);
    rec.multicolored = c0.multicolored;
    rec.tricolored = c0.tricolored;

    if (options.sink) {
      std::vector<LeafId> red, blue;
      for (LeafId x = 0; x < pair.n(); ++x) {
        if (col.color[x] == kRed) red.push_back(x);
        if (col.color[x] == kBlue) blue.push_back(x);
      }
      options.sink->emit({{"event", "iteration_start"}, {"iteration", iteration}, {"u", pcs->u},
                          {"condition", std::string(1, pcs->condition)},
                          {"case", static_cast<int>(col.case_tag)}, {"red", labels_json(pair, red)},
                          {"blue", labels_json(pair, blue)}, {"components", p.size()}});
    }
    auto checkpoint = [&](int stage, const char* procedure) {
      rec.sizes[stage] = p.size();
      if (options.record_snapshots) rec.snapshots.push_back(p.blocks());
      if (options.sink && procedure) {
        nlohmann::json e{{"event", "procedure_end"}, {"iteration", iteration}, {"procedure", procedure},
                         {"components", p.size()}};
        if (options.record_snapshots) e["partition"] = partition_json(p);
        options.sink->emit(e);
      }
    };
    checkpoint(0, nullptr);

    star(scope, 1, pcs->u, "iteration-start");
    make_rb_compatible(p, col, scope);
    checkpoint(1, "make-rb-compatible");
    make_splittable(p, col, scope);
    checkpoint(2, "make-splittable");
    const TopInfo top = top_components(p, col, iteration);
    rec.top_components = top.tops;
    rec.chi = top.chi;
    rec.t = top.t;
    const SplitOutcome so = split(p, col, scope);
    checkpoint(3, "split");

    rec.pair = so.undo_pair;
    if (!rec.pair) rec.pair = find_merge_pair(p, col, origin, iteration);
    if (rec.pair) result.pairs.push_back(*rec.pair);

    // ledger
    const auto& n = rec.sizes;
    rec.delta_d = dual_objective(result.dual, p) - d_before;
    rec.delta_p = n[3] - n[0] - (rec.pair ? 1 : 0);
    if (col.case_tag == Case::kOne) {
      rec.identity_ok = n[3] - n[2] == n[2] - n[0] + 1 + 2 * rec.chi + rec.t &&
                        rec.delta_d == n[3] - n[2] - 1 - rec.chi;
    } else {
      rec.identity_ok = n[3] - n[2] == n[2] - n[0] + 2 && rec.delta_d == n[3] - n[2] - 1;
    }
    rec.ledger_ok = 2 * rec.delta_d >= rec.delta_p;
    rec.dual_after = dual_objective(result.dual, p);
    rec.pairs_after = static_cast<int>(result.pairs.size());
    rec.balance_ok = check_balance(result.dual, p, rec.pairs_after);
    rec.coloring = std::move(col);

    if (!rec.identity_ok) fail("component-count identity failed in iteration " + std::to_string(iteration));
    if (!rec.ledger_ok) fail("2ΔD >= ΔP failed in iteration " + std::to_string(iteration));
    if (!rec.balance_ok) fail("balance inequality failed in iteration " + std::to_string(iteration));
    if (options.strict) {
      if (!v2_disjoint(p)) fail("V2 overlap after iteration " + std::to_string(iteration));
      if (p.components_from_cuts() != p.blocks()) fail("deleted edges disagree with the component lists");
    }
    if (deep_checks) {
      std::vector<LeafId> rb;
      for (LeafId x = 0; x < pair.n(); ++x)
        if (rec.coloring.in_rb(x)) rb.push_back(x);
      if (!is_K_feasible(pair, p.blocks(), rb)) fail("partition is not (R∪B)-feasible after the iteration");
      if (rec.pair && !is_K_feasible(pair, merged_blocks(p, *rec.pair), rb))
        fail("recorded pair breaks (R∪B)-feasibility");
    }
    if (options.sink) {
      options.sink->emit({{"event", "iteration_end"}, {"iteration", iteration},
                          {"sizes", rec.sizes}, {"chi", rec.chi}, {"t", rec.t},
                          {"delta_d", rec.delta_d}, {"delta_p", rec.delta_p},
                          {"pair", pair_json(pair, rec.pair)}, {"dual", rec.dual_after},
                          {"pairs", rec.pairs_after}});
    }
    if (options.on_iteration) options.on_iteration(p, result.dual, rec);
    result.iterations.push_back(std::move(rec));
  }

  result.dual.seal();
  result.dual_objective = dual_objective(result.dual, p);
  result.components_before_merge = p.size();
  merge_components(p, result.pairs);
  result.forest = p.blocks();
  result.value = p.size() - 1;
  if (options.sink) {
    options.sink->emit({{"event", "result"}, {"value", result.value}, {"dual", result.dual_objective},
                        {"pairs", result.pairs.size()}, {"forest", blocks_json(pair, result.forest)}});
  }
  return result;
}

}  // namespace maf
