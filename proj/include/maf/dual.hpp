#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "maf/partition.hpp"

namespace maf {

// Node potentials y_v <= 0 on the internal nodes of both trees. The
// component indicators z are not stored: z_A = 1 exactly for the live
// components of the partition the state is paired with.
class DualState {
 public:
  DualState() = default;
  explicit DualState(const TreePair& pair);

  // Throws InputError for a leaf, InvariantError once sealed.
  void decrement_y(int tree, NodeId v);
  int y(int tree, NodeId v) const { return y_[tree - 1][v]; }
  const std::vector<int>& y_values(int tree) const { return y_[tree - 1]; }
  int64_t sum_y() const { return sum_; }
  int decrements() const { return static_cast<int>(-sum_); }

  // After the main loop the dual no longer changes.
  void seal() { sealed_ = true; }
  bool sealed() const { return sealed_; }

 private:
  const TreePair* pair_ = nullptr;
  std::vector<int> y_[2];
  int64_t sum_ = 0;
  bool sealed_ = false;
};

// Σ y + |P| − 1
int64_t dual_objective(const DualState& state, int components);
inline int64_t dual_objective(const DualState& state, const Partition& p) {
  return dual_objective(state, p.size());
}

// Σ_{internal v ∈ V[L]} y_v + |{A ∈ P : A ∩ L ≠ ∅}|. Throws InputError if L
// is not compatible.
int64_t load(const DualState& state, const Partition& p, std::span<const LeafId> l);

// 2D >= |P| − 1 − pairs
bool check_balance(const DualState& state, const Partition& p, int pairs);

// Calls visit(L) for every compatible set with 1 <= |L| <= max_size, in
// lexicographic order of sorted leaf ids. Sets containing an incompatible
// triple are never extended. visit may return false to stop early.
void for_each_compatible_set(const TreePair& pair, int max_size,
                             const std::function<bool(std::span<const LeafId>)>& visit);

inline constexpr int kDefaultEnumerationCap = 15;

// load(L) <= 1 for every compatible L with |L| <= size_cap (all sizes when
// size_cap <= 0). Throws SizeGateError when n exceeds n_cap.
bool verify_dual_feasibility(const DualState& state, const Partition& p, int size_cap = 0,
                             int n_cap = kDefaultEnumerationCap);

}  // namespace maf
