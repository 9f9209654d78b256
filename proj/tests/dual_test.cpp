#include <doctest.h>

#include <random>

#include "maf/dual.hpp"
#include "maf/errors.hpp"
#include "maf/generators.hpp"
#include "maf/instances.hpp"
#include "maf/redblue.hpp"
#include "support.hpp"

using namespace maf;
using namespace maf::test;

namespace {

int64_t naive_load(const DualState& d, const Partition& p, const std::vector<LeafId>& l) {
  const TreePair& pair = p.pair();
  int64_t total = 0;
  for (int t = 1; t <= 2; ++t)
    for (NodeId v : naive_span(pair, t, l))
      if (!pair.tree(t).is_leaf(v)) total += d.y(t, v);
  std::set<ComponentId> met;
  for (LeafId x : l) met.insert(p.component_of(x));
  return total + static_cast<int64_t>(met.size());
}

std::vector<std::vector<LeafId>> naive_compatible_sets(const TreePair& pair) {
  std::vector<std::vector<LeafId>> out;
  for (int mask = 1; mask < (1 << pair.n()); ++mask) {
    std::vector<LeafId> s;
    for (LeafId x = 0; x < pair.n(); ++x)
      if (mask >> x & 1) s.push_back(x);
    if (naive_compatible(pair, s)) out.push_back(s);
  }
  return out;
}

}  // namespace

TEST_CASE("decrement y") {
  const TreePair pair = fig1_instance().pair;
  DualState d(pair);
  const NodeId v = pair.t1().root();
  d.decrement_y(1, v);
  CHECK(d.y(1, v) == -1);
  d.decrement_y(1, v);
  CHECK(d.y(1, v) == -2);
  CHECK(d.sum_y() == -2);
  CHECK(d.decrements() == 2);
  CHECK_THROWS_AS(d.decrement_y(2, pair.leaf_node(2, 0)), InputError);
  d.seal();
  CHECK_THROWS_AS(d.decrement_y(1, v), InvariantError);
}

TEST_CASE("initial state") {
  const TreePair pair = fig1_instance().pair;
  const DualState d(pair);
  const Partition p(pair);
  CHECK(dual_objective(d, p) == 0);
  CHECK(check_balance(d, p, 0));
  for (const auto& l : naive_compatible_sets(pair)) REQUIRE(load(d, p, l) == 1);
  CHECK_THROWS_AS(load(d, p, ids(pair, {"b2", "r2", "w2"})), InputError);
  CHECK(verify_dual_feasibility(d, p));
}

TEST_CASE("compatible set enumeration") {
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    const TreePair pair = random_pair(7, seed);
    std::vector<std::vector<LeafId>> got;
    for_each_compatible_set(pair, 0, [&](std::span<const LeafId> s) {
      got.emplace_back(s.begin(), s.end());
      return true;
    });
    auto want = naive_compatible_sets(pair);
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    REQUIRE(got == want);
  }
  // identical trees: every nonempty set
  int count = 0;
  for_each_compatible_set(pair_of("(((a,b),c),(d,e));", "(((a,b),c),(d,e));"), 0, [&](auto) { return ++count, true; });
  CHECK(count == 31);
}

TEST_CASE("loads and feasibility along runs") {
  for (uint64_t seed = 1; seed <= 25; ++seed) {
    const int n = 5 + static_cast<int>(seed % 5);
    const TreePair pair = random_pair(n, seed);
    const auto sets = naive_compatible_sets(pair);
    RunOptions opts;
    int checked = 0;
    opts.on_iteration = [&](const Partition& p, const DualState& d, const IterationRecord& rec) {
      bool feasible = true;
      for (const auto& l : sets) {
        const int64_t got = load(d, p, l);
        REQUIRE(got == naive_load(d, p, l));
        feasible = feasible && got <= 1;
      }
      REQUIRE(feasible);
      CHECK(verify_dual_feasibility(d, p));
      CHECK(dual_objective(d, p) == rec.dual_after);
      ++checked;
    };
    const RedBlueResult r = run_red_blue(pair, opts);
    CHECK(checked == static_cast<int>(r.iterations.size()));
    const int opt = naive_maf(pair);
    CHECK(r.dual_objective <= opt);
    CHECK(r.value <= 2 * r.dual_objective);
  }
}

TEST_CASE("a split without its decrement is caught") {
  const TreePair pair = fig1_instance().pair;
  const DualState d(pair);
  Partition p(pair);
  p.split_below(pair.lca_of(2, ids(pair, {"b1", "r1"})));
  // {b1, w3} meets both components and no potential was lowered
  CHECK(load(d, p, ids(pair, {"b1", "w3"})) == 2);
  CHECK_FALSE(verify_dual_feasibility(d, p));
  CHECK(verify_dual_feasibility(d, p, 1));
}

TEST_CASE("size gate") {
  const TreePair pair = random_pair(16, 1);
  CHECK_THROWS_AS(verify_dual_feasibility(DualState(pair), Partition(pair)), SizeGateError);
}

TEST_CASE("final state of the second example") {
  const TreePair pair = fig9_instance().pair;
  const RedBlueResult r = run_red_blue(pair);
  CHECK(r.dual_objective <= 5);
  CHECK(dual_objective(r.dual, r.components_before_merge) == r.dual_objective);
  CHECK(2 * r.dual_objective >= r.components_before_merge - 1 - static_cast<int64_t>(r.pairs.size()));
  CHECK(verify_dual_feasibility(r.dual, Partition::from_components(pair, r.forest)));
}
