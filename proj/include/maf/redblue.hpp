#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "maf/dual.hpp"
#include "maf/partition.hpp"
#include "maf/trace.hpp"

namespace maf {

// A lowest root-of-infeasibility in T1 and the clause ('a', 'b' or 'c') that
// fired: (a) an incompatible component below u, (b) two components overlap
// below u, (c) a component that cannot be extended past its part below u.
struct Pcs {
  NodeId u = kNoNode;
  char condition = 0;
};

// Bottom-up scan of T1. Requires p to have no V2 overlap. Returns nullopt
// exactly when p is a feasible agreement forest.
std::optional<Pcs> find_lowest_pcs(const Partition& p);

// Linear-time feasibility: no V2 overlap and no root-of-infeasibility.
bool is_feasible(const Partition& p);

enum class Case { kOne = 1, kTwo = 2, kThree = 3 };

struct Coloring {
  NodeId u = kNoNode;
  char condition = 0;
  std::vector<Color> color;  // per leaf
  int red = 0;
  int blue = 0;
  Case case_tag = Case::kOne;

  bool in_rb(LeafId x) const { return color[x] != kWhite; }
};

// R = leaves below the right child of u, B = below the left child.
Coloring make_coloring(const TreePair& pair, NodeId u, char condition = 0);

// Throws InvariantError if the partition fits none of the three cases.
Case classify_case(const Partition& p, const Coloring& c);

struct StarEvent {
  int tree = 0;
  NodeId node = kNoNode;
  std::string procedure;
};

// Where the refinement procedures report dual decrements and trace events.
// Every member may be null.
struct IterationScope {
  DualState* dual = nullptr;
  std::vector<StarEvent>* stars = nullptr;
  TraceSink* sink = nullptr;
  int iteration = 0;
};

// Each returns the number of refinements performed.
int make_rb_compatible(Partition& p, const Coloring& c, IterationScope& scope);
int make_splittable(Partition& p, const Coloring& c, IterationScope& scope);

struct MergePair {
  LeafId x1 = kNoLeaf;
  LeafId x2 = kNoLeaf;
  char rule = 0;  // 'a' undo of a special split, 'b' same colour, 'c' red + blue
};

struct SplitOutcome {
  std::optional<MergePair> undo_pair;
  // ids (before splitting) of components that took the four-way special split
  std::vector<ComponentId> four_way;
  int refinements = 0;
};

SplitOutcome split(Partition& p, const Coloring& c, IterationScope& scope);

// origin[x] is the id of x's component at the start of the iteration;
// generation marks the components created during it.
std::optional<MergePair> find_merge_pair(const Partition& p, const Coloring& c,
                                         const std::vector<ComponentId>& origin, int generation);

// Unions the components of each recorded pair, in order. Throws
// InvariantError if a pair is already joined or the result is infeasible.
void merge_components(Partition& p, const std::vector<MergePair>& pairs);

struct IterationRecord {
  int index = 0;
  Coloring coloring;
  std::array<int, 4> sizes{};  // |P0| .. |P3|
  int multicolored = 0;        // in P0
  int tricolored = 0;          // in P0
  int top_components = 0;      // in P2
  int chi = 0;
  int t = 0;
  int64_t delta_d = 0;
  int delta_p = 0;
  std::optional<MergePair> pair;
  std::vector<StarEvent> stars;
  std::vector<std::vector<std::vector<LeafId>>> snapshots;  // P0..P3 when recorded
  int64_t dual_after = 0;
  int pairs_after = 0;
  bool identity_ok = true;  // component-count and ΔD identities of the case
  bool ledger_ok = true;    // 2ΔD >= ΔP
  bool balance_ok = true;   // 2D >= |P| - 1 - |pairs|
};

struct RunOptions {
  bool record_snapshots = false;
  // Re-check each iteration with the definition-level predicates (only for
  // n <= strict_cap) and throw InvariantError on any failed identity.
  bool strict = false;
  int strict_cap = 12;
  TraceSink* sink = nullptr;
  // Called at the end of every iteration, before merging.
  std::function<void(const Partition&, const DualState&, const IterationRecord&)> on_iteration;
};

struct RedBlueResult {
  std::vector<std::vector<LeafId>> forest;  // final components
  int value = 0;                            // |forest| - 1
  int components_before_merge = 0;
  DualState dual;
  int64_t dual_objective = 0;
  std::vector<MergePair> pairs;
  std::vector<IterationRecord> iterations;
};

RedBlueResult run_red_blue(const TreePair& pair, const RunOptions& options = {});

}  // namespace maf
