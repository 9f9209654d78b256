#include "maf/lp_builders.hpp"

#include <algorithm>
#include <string>

#include "maf/errors.hpp"

namespace maf {

std::vector<std::vector<LeafId>> enumerate_compatible_sets(const TreePair& pair, int min_size, int n_cap) {
  if (pair.n() > n_cap)
    throw SizeGateError("compatible-set enumeration refuses n=" + std::to_string(pair.n()) + " > " +
                        std::to_string(n_cap));
  std::vector<std::vector<LeafId>> out;
  for_each_compatible_set(pair, 0, [&](std::span<const LeafId> l) {
    if (static_cast<int>(l.size()) >= min_size) out.emplace_back(l.begin(), l.end());
    return true;
  });
  return out;
}

std::string set_variable_name(const TreePair& pair, const std::vector<LeafId>& leaves) {
  std::string name = "x_L_";
  for (size_t i = 0; i < leaves.size(); ++i) {
    if (i) name += '.';
    name += pair.label(leaves[i]);
  }
  return name;
}

LpModel build_exponential_lp(const TreePair& pair, bool integer, int n_cap) {
  const auto sets = enumerate_compatible_sets(pair, 1, n_cap);
  LpModel m;
  std::vector<std::vector<LpTerm>> cover(pair.n());
  std::vector<std::vector<LpTerm>> pack[2] = {std::vector<std::vector<LpTerm>>(pair.t1().node_count()),
                                              std::vector<std::vector<LpTerm>>(pair.t2().node_count())};
  std::vector<LpTerm> objective;
  for (const auto& l : sets) {
    const int v = m.add_variable(set_variable_name(pair, l), 0.0,
                                 integer ? std::optional<double>(1.0) : std::nullopt, integer);
    objective.push_back({v, 1.0});
    for (LeafId x : l) cover[x].push_back({v, 1.0});
    if (l.size() < 2) continue;
    for (int t = 1; t <= 2; ++t)
      for (NodeId node : pair.spanned_nodes(t, l))
        if (!pair.tree(t).is_leaf(node)) pack[t - 1][node].push_back({v, 1.0});
  }
  m.set_objective(std::move(objective), -1.0);
  for (LeafId x = 0; x < pair.n(); ++x)
    m.add_constraint("cover_" + std::to_string(x + 1), std::move(cover[x]), Sense::kEqual, 1.0);
  int k = 0;
  for (int t = 0; t < 2; ++t)
    for (auto& row : pack[t])
      if (!row.empty()) m.add_constraint("pack_" + std::to_string(++k), std::move(row), Sense::kLessEqual, 1.0);
  return m;
}

namespace {

// Edge sets of leaf-to-leaf paths as bitsets over child-node ids.
class PathSets {
 public:
  PathSets(const TreePair& pair, int t) : pair_(pair), t_(t), words_((pair.tree(t).node_count() + 63) / 64) {}

  std::vector<uint64_t> path(LeafId a, LeafId b) const {
    const RootedBinaryTree& tr = pair_.tree(t_);
    const NodeId top = pair_.lca_leaves(t_, a, b);
    std::vector<uint64_t> bits(words_, 0);
    for (LeafId x : {a, b})
      for (NodeId v = pair_.leaf_node(t_, x); v != top; v = tr.parent(v)) bits[v / 64] |= uint64_t{1} << (v % 64);
    return bits;
  }

 private:
  const TreePair& pair_;
  int t_;
  size_t words_;
};

bool intersects(const std::vector<uint64_t>& a, const std::vector<uint64_t>& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] & b[i]) return true;
  return false;
}

std::vector<LpTerm> edge_terms(const std::vector<uint64_t>& bits, const std::vector<int>& var_of_node) {
  std::vector<LpTerm> terms;
  for (size_t w = 0; w < bits.size(); ++w)
    for (uint64_t b = bits[w]; b; b &= b - 1) terms.push_back({var_of_node[w * 64 + __builtin_ctzll(b)], 1.0});
  return terms;
}

}  // namespace

LpModel build_wu_ilp(const TreePair& pair, bool integer) {
  const RootedBinaryTree& t1 = pair.t1();
  const int n = pair.n();
  LpModel m;
  std::vector<int> var_of_node(t1.node_count(), -1);
  std::vector<LpTerm> objective;
  for (NodeId v = 0; v < t1.root(); ++v) {
    var_of_node[v] = m.add_variable("xe_" + std::to_string(v), 0.0, 1.0, integer);
    objective.push_back({var_of_node[v], 1.0});
  }
  m.set_objective(std::move(objective));

  const PathSets p1(pair, 1), p2(pair, 2);
  std::vector<std::pair<LeafId, LeafId>> pairs;
  std::vector<std::vector<uint64_t>> path1, path2;
  for (LeafId i = 0; i < n; ++i)
    for (LeafId j = i + 1; j < n; ++j) {
      pairs.push_back({i, j});
      path1.push_back(p1.path(i, j));
      path2.push_back(p2.path(i, j));
    }
  auto index = [n](LeafId i, LeafId j) { return i * n - i * (i + 1) / 2 + (j - i - 1); };

  int k = 0;
  for (LeafId i = 0; i < n; ++i)
    for (LeafId j = i + 1; j < n; ++j)
      for (LeafId l = j + 1; l < n; ++l) {
        if (pair.triple_compatible(i, j, l)) continue;
        std::vector<uint64_t> bits = path1[index(i, j)];
        for (size_t w = 0; w < bits.size(); ++w) bits[w] |= path1[index(i, l)][w] | path1[index(j, l)][w];
        m.add_constraint("triple_" + std::to_string(++k), edge_terms(bits, var_of_node), Sense::kGreaterEqual, 1.0);
      }
  k = 0;
  for (size_t a = 0; a < pairs.size(); ++a)
    for (size_t b = a + 1; b < pairs.size(); ++b) {
      if (intersects(path1[a], path1[b]) || !intersects(path2[a], path2[b])) continue;
      std::vector<uint64_t> bits = path1[a];
      for (size_t w = 0; w < bits.size(); ++w) bits[w] |= path1[b][w];
      m.add_constraint("cross_" + std::to_string(++k), edge_terms(bits, var_of_node), Sense::kGreaterEqual, 1.0);
    }
  return m;
}

}  // namespace maf
