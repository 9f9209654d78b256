#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <string>

#include "maf/errors.hpp"
#include "maf/lp_builders.hpp"

namespace maf {

CompactLpGraph::CompactLpGraph(const TreePair& pair) : pair_(&pair) {
  const int n = pair.n();
  for (LeafId i = 0; i < n; ++i)
    for (LeafId j = i; j < n; ++j) nodes_.push_back({i, j});
  for (int t = 1; t <= 2; ++t) {
    lca_[t - 1].resize(nodes_.size());
    for (size_t z = 0; z < nodes_.size(); ++z) lca_[t - 1][z] = pair.lca_leaves(t, nodes_[z].first, nodes_[z].second);
  }
  out_.resize(nodes_.size());
  in_.resize(nodes_.size());
  auto below = [&](int s, int r) {
    for (int t = 1; t <= 2; ++t)
      if (!pair.tree(t).is_proper_ancestor(lca_[t - 1][r], lca_[t - 1][s])) return false;
    return true;
  };
  for (int r = 0; r < node_count(); ++r) {
    if (is_diagonal(r)) continue;
    for (bool first : {true, false}) {
      const LeafId j1 = first ? nodes_[r].first : nodes_[r].second;
      for (LeafId j2 = j1; j2 < n; ++j2) {
        const int s = node_id(j1, j2);
        if (!below(s, r)) continue;
        out_[r].push_back(static_cast<int>(arcs_.size()));
        in_[s].push_back(static_cast<int>(arcs_.size()));
        arcs_.push_back({r, s, first});
      }
    }
  }
}

int CompactLpGraph::node_id(LeafId i1, LeafId i2) const {
  const int n = pair_->n();
  return i1 * n - i1 * (i1 - 1) / 2 + (i2 - i1);
}

int CompactLpGraph::find_arc(int from, int to, bool first) const {
  for (int a : out_[from])
    if (arcs_[a].to == to && arcs_[a].first == first) return a;
  return -1;
}

std::string CompactLpGraph::arc_name(int a) const {
  const auto [i1, i2] = nodes_[arcs_[a].from];
  const auto [j1, j2] = nodes_[arcs_[a].to];
  return "y_" + std::to_string(i1 + 1) + "." + std::to_string(i2 + 1) + "__" + std::to_string(j1 + 1) + "." +
         std::to_string(j2 + 1);
}

LpModel build_compact_lp(const CompactLpGraph& g) {
  const TreePair& pair = g.pair();
  LpModel m;
  for (int a = 0; a < static_cast<int>(g.arcs().size()); ++a) m.add_variable(g.arc_name(a));
  std::vector<int> x(pair.n());
  for (LeafId i = 0; i < pair.n(); ++i) x[i] = m.add_variable(set_variable_name(pair, {i}));

  // objective: Σ_{r off-diagonal} (y(δ+(r) ∩ U1) − y(δ−(r))) + Σ x_i − 1
  std::vector<double> coef(g.arcs().size(), 0.0);
  for (int a = 0; a < static_cast<int>(g.arcs().size()); ++a) {
    if (g.arcs()[a].first) coef[a] += 1.0;
    if (!g.is_diagonal(g.arcs()[a].to)) coef[a] -= 1.0;
  }
  std::vector<LpTerm> objective;
  for (int a = 0; a < static_cast<int>(coef.size()); ++a)
    if (coef[a] != 0.0) objective.push_back({a, coef[a]});
  for (LeafId i = 0; i < pair.n(); ++i) objective.push_back({x[i], 1.0});
  m.set_objective(std::move(objective), -1.0);

  int k = 0;
  for (int r = 0; r < g.node_count(); ++r) {
    if (g.is_diagonal(r)) continue;
    std::vector<LpTerm> row;
    for (int a : g.out_arcs(r)) row.push_back({a, g.arcs()[a].first ? 1.0 : -1.0});
    m.add_constraint("flow_" + std::to_string(++k), std::move(row), Sense::kEqual, 0.0);
  }
  k = 0;
  for (int r = 0; r < g.node_count(); ++r) {
    if (g.is_diagonal(r)) continue;
    std::vector<LpTerm> row;
    for (int a : g.out_arcs(r))
      if (g.arcs()[a].first) row.push_back({a, 1.0});
    for (int a : g.in_arcs(r)) row.push_back({a, -1.0});
    m.add_constraint("cone_" + std::to_string(++k), std::move(row), Sense::kGreaterEqual, 0.0);
  }
  for (LeafId i = 0; i < pair.n(); ++i) {
    std::vector<LpTerm> row{{x[i], 1.0}};
    for (int a : g.in_arcs(g.node_id(i, i))) row.push_back({a, 1.0});
    m.add_constraint("leafsat_" + std::to_string(i + 1), std::move(row), Sense::kEqual, 1.0);
  }
  k = 0;
  for (int t = 1; t <= 2; ++t) {
    const RootedBinaryTree& tr = pair.tree(t);
    std::vector<std::vector<LpTerm>> rows(tr.node_count());
    for (int r = 0; r < g.node_count(); ++r) {
      if (g.is_diagonal(r)) continue;
      for (int a : g.out_arcs(r))
        if (g.arcs()[a].first) rows[g.lca(t, r)].push_back({a, 1.0});
    }
    for (NodeId v = 0; v < tr.node_count(); ++v)
      if (!tr.is_leaf(v) && !rows[v].empty())
        m.add_constraint("pack_" + std::to_string(++k), std::move(rows[v]), Sense::kLessEqual, 1.0);
  }
  return m;
}

std::vector<int> arborescence_of(const CompactLpGraph& g, const std::vector<LeafId>& leaves) {
  const TreePair& pair = g.pair();
  if (!pair.set_compatible(leaves)) throw InputError("arborescences exist only for compatible sets");
  std::vector<int> arcs;
  // returns the node of Z labelling the restricted T1 subtree on `part`
  std::function<int(std::vector<LeafId>)> build = [&](std::vector<LeafId> part) -> int {
    std::sort(part.begin(), part.end());
    if (part.size() == 1) return g.node_id(part[0], part[0]);
    const RootedBinaryTree& t1 = pair.t1();
    const NodeId top = pair.lca_of(1, part);
    std::vector<LeafId> a, b;
    for (LeafId x : part) (t1.is_ancestor_or_self(t1.left(top), pair.leaf_node(1, x)) ? a : b).push_back(x);
    if (b.front() < a.front()) std::swap(a, b);
    const int r = g.node_id(a.front(), b.front());
    const int r1 = build(a), r2 = build(b);
    const int a1 = g.find_arc(r, r1, true), a2 = g.find_arc(r, r2, false);
    if (a1 < 0 || a2 < 0) throw InvariantError("compatible set without its arborescence arcs");
    arcs.push_back(a1);
    arcs.push_back(a2);
    return r;
  };
  if (leaves.size() >= 2) build(leaves);
  std::sort(arcs.begin(), arcs.end());
  return arcs;
}

std::vector<std::vector<LeafId>> arborescence_leafsets(const CompactLpGraph& g, int max_n) {
  const int n = g.pair().n();
  if (n > max_n)
    throw SizeGateError("arborescence enumeration refuses n=" + std::to_string(n) + " > " + std::to_string(max_n));
  // memo[z]: leaf sets of all arborescences rooted at z
  std::vector<std::optional<std::vector<std::vector<LeafId>>>> memo(g.node_count());
  std::function<const std::vector<std::vector<LeafId>>&(int)> at = [&](int z) -> const std::vector<std::vector<LeafId>>& {
    if (memo[z]) return *memo[z];
    std::vector<std::vector<LeafId>> sets;
    if (g.is_diagonal(z)) {
      sets.push_back({g.node(z).first});
    } else {
      for (int a1 : g.out_arcs(z)) {
        if (!g.arcs()[a1].first) continue;
        for (int a2 : g.out_arcs(z)) {
          if (g.arcs()[a2].first) continue;
          const auto& left = at(g.arcs()[a1].to);
          const auto& right = at(g.arcs()[a2].to);
          for (const auto& l : left)
            for (const auto& r : right) {
              std::vector<LeafId> u;
              std::set_union(l.begin(), l.end(), r.begin(), r.end(), std::back_inserter(u));
              if (u.size() != l.size() + r.size())
                throw InvariantError("two child arborescences share a leaf");
              sets.push_back(std::move(u));
            }
        }
      }
    }
    memo[z] = std::move(sets);
    return *memo[z];
  };
  std::vector<std::vector<LeafId>> out;
  for (int z = 0; z < g.node_count(); ++z) {
    if (g.is_diagonal(z)) continue;
    const auto& s = at(z);
    out.insert(out.end(), s.begin(), s.end());
  }
  return out;
}

LpPoint encode_compact_point(const CompactLpGraph& g,
                             const std::vector<std::pair<std::vector<LeafId>, double>>& weighted_sets) {
  const TreePair& pair = g.pair();
  std::vector<double> y(g.arcs().size(), 0.0);
  for (const auto& [set, w] : weighted_sets) {
    if (set.size() < 2) continue;
    for (int a : arborescence_of(g, set)) y[a] += w;
  }
  LpPoint point;
  for (size_t a = 0; a < y.size(); ++a)
    if (y[a] != 0.0) point[g.arc_name(static_cast<int>(a))] = y[a];
  for (LeafId i = 0; i < pair.n(); ++i) {
    double in = 0.0;
    for (int a : g.in_arcs(g.node_id(i, i))) in += y[a];
    point[set_variable_name(pair, {i})] = 1.0 - in;
  }
  return point;
}

bool in_cone(const CompactLpGraph& g, const std::vector<double>& y, double tol) {
  for (double v : y)
    if (v < -tol) return false;
  for (int r = 0; r < g.node_count(); ++r) {
    if (g.is_diagonal(r)) continue;
    double u1 = 0, u2 = 0, in = 0;
    for (int a : g.out_arcs(r)) (g.arcs()[a].first ? u1 : u2) += y[a];
    for (int a : g.in_arcs(r)) in += y[a];
    if (std::abs(u1 - u2) > tol || u1 - in < -tol) return false;
  }
  return true;
}

std::optional<std::vector<std::vector<LeafId>>> peel_arborescences(const CompactLpGraph& g, std::vector<int> y) {
  std::vector<std::vector<LeafId>> peeled;
  auto support_in = [&](int z) {
    for (int a : g.in_arcs(z))
      if (y[a] > 0) return true;
    return false;
  };
  auto support_out = [&](int z) {
    for (int a : g.out_arcs(z))
      if (y[a] > 0) return true;
    return false;
  };
  while (true) {
    int root = -1;
    for (int z = 0; z < g.node_count() && root < 0; ++z)
      if (support_out(z) && !support_in(z)) root = z;
    if (root < 0) break;
    std::vector<int> arcs;
    std::vector<LeafId> leaves;
    std::vector<char> used(g.node_count(), 0);
    std::function<bool(int)> grow = [&](int z) {
      if (used[z]) return false;
      used[z] = 1;
      if (g.is_diagonal(z)) {
        leaves.push_back(g.node(z).first);
        return true;
      }
      int a1 = -1, a2 = -1;
      for (int a : g.out_arcs(z)) {
        if (y[a] <= 0) continue;
        if (g.arcs()[a].first && a1 < 0) a1 = a;
        if (!g.arcs()[a].first && a2 < 0) a2 = a;
      }
      if (a1 < 0 || a2 < 0) return false;
      arcs.push_back(a1);
      arcs.push_back(a2);
      return grow(g.arcs()[a1].to) && grow(g.arcs()[a2].to);
    };
    if (!grow(root)) return std::nullopt;
    int eps = y[arcs[0]];
    for (int a : arcs) eps = std::min(eps, y[a]);
    for (int a : arcs) y[a] -= eps;
    std::sort(leaves.begin(), leaves.end());
    for (int k = 0; k < eps; ++k) peeled.push_back(leaves);
  }
  for (int v : y)
    if (v != 0) return std::nullopt;
  return peeled;
}

}  // namespace maf
