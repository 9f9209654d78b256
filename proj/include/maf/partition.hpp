#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "maf/tree_pair.hpp"

namespace maf {

using ComponentId = int;
inline constexpr ComponentId kNoComponent = -1;

// A partition of the leaves realized as T2 minus a set of deleted edges.
// The deleted edges are authoritative; per-component leaf lists are caches.
// Every split or merge retires the old id and issues ids stamped with the
// current generation. Retired ids are recycled, so id_bound() stays near the
// number of live components.
class Partition {
 public:
  // The one-component partition {L}.
  explicit Partition(const TreePair& pair);

  // Builds the partition with the given blocks. Throws InputError if they do
  // not partition the leaves or overlap in V2.
  static Partition from_components(const TreePair& pair, const std::vector<std::vector<LeafId>>& blocks);

  const TreePair& pair() const { return *pair_; }
  int size() const { return live_; }
  int id_bound() const { return static_cast<int>(leaves_.size()); }
  ComponentId component_of(LeafId x) const { return comp_of_[x]; }
  std::span<const LeafId> leaves(ComponentId c) const { return leaves_[c]; }
  int component_size(ComponentId c) const { return size_[c]; }
  bool alive(ComponentId c) const { return alive_[c] != 0; }
  int generation(ComponentId c) const { return gen_[c]; }
  std::vector<ComponentId> live_components() const;

  // Stamp given to components created from now on.
  void set_generation(int g) { generation_ = g; }

  // Deletes the T2 edge above u. The component A with leaves both below and
  // outside L(u) becomes A ∩ L(u) (first) and A \ L(u) (second).
  std::pair<ComponentId, ComponentId> split_below(NodeId u);

  // Replaces c by the given blocks, which must partition c and must not
  // overlap each other in V2. Deletes the edge above the lca of every block
  // except the one whose lca is highest. Returns the new ids in block order.
  std::vector<ComponentId> refine(ComponentId c, const std::vector<std::vector<LeafId>>& blocks);

  // Unions two live components under a fresh id. The deleted-edge set is
  // left stale until recompute_cuts().
  ComponentId merge(ComponentId a, ComponentId b);
  // Re-derives a deleted-edge set realizing the current blocks (requires
  // them not to overlap in V2).
  void recompute_cuts();

  bool cut_above(NodeId v) const { return cut_above_[v] != 0; }
  std::vector<NodeId> deleted_edges() const;
  // Components read off the deleted-edge set, for cross-checking the caches.
  std::vector<std::vector<LeafId>> components_from_cuts() const;
  // Live blocks, each sorted, ordered by smallest leaf.
  std::vector<std::vector<LeafId>> blocks() const;

  // Changes whenever the blocks change; unique across all partitions.
  uint64_t stamp() const { return stamp_; }

 private:
  ComponentId add_component(std::vector<LeafId> leaves);
  void retire(ComponentId c);

  const TreePair* pair_ = nullptr;
  std::vector<std::vector<LeafId>> leaves_;
  std::vector<int> gen_;
  std::vector<uint8_t> alive_;
  std::vector<int> size_;
  mutable std::vector<ComponentId> live_ids_;  // ascending, rebuilt when stale
  mutable bool live_stale_ = false;
  std::vector<ComponentId> free_ids_;
  std::vector<ComponentId> comp_of_;
  std::vector<uint8_t> cut_above_;
  int live_ = 0;
  int generation_ = 0;
  uint64_t stamp_ = 0;
  void touch();
};

enum Color : uint8_t { kRed = 0, kBlue = 1, kWhite = 2 };

// Per-T2-node covering information (A_u, s(u), s_C(u)), recomputed in one
// bottom-up pass.
struct Annotations2 {
  struct Node {
    ComponentId comp = kNoComponent;  // component covering the node
    int rest = 0;                     // |A_u| - s(u)
  };
  std::vector<Node> node;
  // |L(u) ∩ A_u ∩ R| and |L(u) ∩ A_u ∩ B| per node, only with a coloring
  std::vector<std::array<int, 2>> counts;
  // per component id: leaves of each color (only with a coloring)
  std::vector<std::array<int, 3>> comp_color;  // live ids only
  NodeId overlap_at = kNoNode;  // lowest node covered by two components
  const Partition* partition = nullptr;

  ComponentId comp(NodeId v) const { return node[v].comp; }
  // |L(u) ∩ A_u|
  int s(NodeId v) const {
    return node[v].comp == kNoComponent ? 0 : partition->component_size(node[v].comp) - node[v].rest;
  }
  // |L(u) ∩ A_u ∩ C| for each color
  std::array<int, 3> s_color(NodeId v) const {
    const auto [r, b] = counts[v];
    return {r, b, s(v) - r - b};
  }
};

Annotations2 annotate(const Partition& p, const std::vector<Color>* coloring = nullptr);
// Same, reusing the storage of out.
void annotate_into(const Partition& p, const std::vector<Color>* coloring, Annotations2& out);
// Same, from a per-thread cache keyed by the partition stamp and the
// coloring; valid until the next call on this thread.
const Annotations2& annotate_cached(const Partition& p, const std::vector<Color>* coloring);

// No two components overlap in V2 (linear time).
bool v2_disjoint(const Partition& p);

// Definition-level checks, polynomial but slow; used as oracles.
bool is_feasible_maf(const TreePair& pair, const std::vector<std::vector<LeafId>>& blocks);
bool is_K_feasible(const TreePair& pair, const std::vector<std::vector<LeafId>>& blocks,
                   std::span<const LeafId> k);

}  // namespace maf
