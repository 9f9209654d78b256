#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "maf/dual.hpp"
#include "maf/lp_model.hpp"
#include "maf/tree_pair.hpp"

namespace maf {

// All compatible sets with |L| >= min_size, each sorted, in lexicographic
// order. Throws SizeGateError above n_cap leaves.
std::vector<std::vector<LeafId>> enumerate_compatible_sets(const TreePair& pair, int min_size = 1,
                                                           int n_cap = kDefaultEnumerationCap);

// "x_L_" followed by the member labels (leaf-id order) joined with '.'.
std::string set_variable_name(const TreePair& pair, const std::vector<LeafId>& leaves);

// min Σ x_L − 1 subject to one covering equality per leaf (cover_k) and one
// packing row per internal node of either tree (pack_k; T1 nodes first).
LpModel build_exponential_lp(const TreePair& pair, bool integer = false, int n_cap = kDefaultEnumerationCap);

// The leaf-pair DAG: nodes (i1, i2) with i1 <= i2; an arc r -> s when
// lca_t(s) is strictly below lca_t(r) in both trees and s starts with i1 (U1)
// or with i2 (U2).
class CompactLpGraph {
 public:
  struct Arc {
    int from = 0;
    int to = 0;
    bool first = true;  // U1 when true, U2 otherwise
  };

  explicit CompactLpGraph(const TreePair& pair);

  const TreePair& pair() const { return *pair_; }
  int node_count() const { return static_cast<int>(nodes_.size()); }
  std::pair<LeafId, LeafId> node(int z) const { return nodes_[z]; }
  int node_id(LeafId i1, LeafId i2) const;  // requires i1 <= i2
  bool is_diagonal(int z) const { return nodes_[z].first == nodes_[z].second; }
  NodeId lca(int t, int z) const { return lca_[t - 1][z]; }

  const std::vector<Arc>& arcs() const { return arcs_; }
  const std::vector<int>& out_arcs(int z) const { return out_[z]; }
  const std::vector<int>& in_arcs(int z) const { return in_[z]; }
  int find_arc(int from, int to, bool first) const;  // -1 if absent

  // "y_<i1>.<i2>__<j1>.<j2>" with 1-based leaf indices
  std::string arc_name(int a) const;

 private:
  const TreePair* pair_;
  std::vector<std::pair<LeafId, LeafId>> nodes_;
  std::vector<NodeId> lca_[2];
  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> out_, in_;
};

// The compact formulation: flow rows (flow_k, U1 out = U2 out) and cone rows
// (cone_k, U1 out >= in) for every non-diagonal node, leaf rows (leafsat_k)
// and packing rows over lca^{-1}(v) for internal v of T1 then T2 (pack_k).
LpModel build_compact_lp(const CompactLpGraph& graph);

// Arc set of the arborescence F(L) of a compatible set with |L| >= 2
// (empty for singletons). Throws InputError if L is incompatible.
std::vector<int> arborescence_of(const CompactLpGraph& graph, const std::vector<LeafId>& leaves);

// Leaf sets of all arborescences with one U1 and one U2 arc out of every
// internal node and leaves on the diagonal, by recursive enumeration from
// every root. Throws SizeGateError above max_n leaves.
std::vector<std::vector<LeafId>> arborescence_leafsets(const CompactLpGraph& graph, int max_n = 6);

// y = Σ_L w_L χ_{F(L)}, x_{i} = 1 − y(δ−(i,i)) as a point of build_compact_lp.
LpPoint encode_compact_point(const CompactLpGraph& graph,
                             const std::vector<std::pair<std::vector<LeafId>, double>>& weighted_sets);

// Greedy peeling of an integral cone vector (arc multiplicities) into
// arborescences, following the constructive proof of the cone description.
// Returns the leaf sets peeled, or nothing if a step fails.
std::optional<std::vector<std::vector<LeafId>>> peel_arborescences(const CompactLpGraph& graph,
                                                                   std::vector<int> y);

// Cone rows (flow and out >= in on non-diagonal nodes) for a vector of arc
// multiplicities.
bool in_cone(const CompactLpGraph& graph, const std::vector<double>& y, double tol = 1e-9);

// Wu's edge-deletion ILP: binary xe_<child node id> per T1 edge, one row per
// incompatible triple (triple_k) and one per pair of leaf pairs whose T1 paths
// are edge-disjoint while their T2 paths share an edge (cross_k).
LpModel build_wu_ilp(const TreePair& pair, bool integer = true);

}  // namespace maf
