#include <doctest.h>

#include <cstdlib>

#include "maf/errors.hpp"
#include "maf/generators.hpp"
#include "maf/harness.hpp"
#include "maf/instances.hpp"
#include "maf/oracle.hpp"
#include "support.hpp"

using namespace maf;
using namespace maf::test;

namespace {

// T restricted to all leaves but `drop`, as Newick
std::string without_leaf(const TreePair& pair, int t, LeafId drop) {
  std::vector<LeafId> keep;
  for (LeafId x = 0; x < pair.n(); ++x)
    if (x != drop) keep.push_back(x);
  return restricted_shape(pair, t, keep) + ";";
}

}  // namespace

TEST_CASE("exact value on fixed instances") {
  CHECK(exact_maf(pair_of("((a,b),(c,d));", "((c,d),(b,a));")).value == 0);
  CHECK(exact_maf(fig9_instance().pair).value == 5);
  const TreePair fig1 = fig1_instance().pair;
  const ExactResult r = exact_maf(fig1);
  CHECK(r.value == naive_maf(fig1));
  CHECK(naive_feasible(fig1, r.forest));
  CHECK(static_cast<int>(r.forest.size()) == r.value + 1);
}

TEST_CASE("exact value against full enumeration") {
  for (uint64_t seed = 1; seed <= 60; ++seed) {
    const int n = 3 + static_cast<int>(seed % 5);
    const TreePair pair = random_pair(n, seed);
    const ExactResult r = exact_maf(pair);
    REQUIRE(r.value == naive_maf(pair));
    REQUIRE(naive_feasible(pair, r.forest));
  }
}

TEST_CASE("exact value never grows when a leaf is removed") {
  for (uint64_t seed = 1; seed <= 30; ++seed) {
    const TreePair pair = random_pair(8, seed);
    const int full = exact_maf(pair).value;
    for (LeafId x = 0; x < pair.n(); ++x) {
      const TreePair smaller = pair_of(without_leaf(pair, 1, x), without_leaf(pair, 2, x));
      REQUIRE(exact_maf(smaller).value <= full);
    }
  }
}

TEST_CASE("oracle gate") {
  const TreePair big = random_pair(11, 1);
  CHECK_THROWS_AS(exact_maf(big), SizeGateError);
  CHECK_NOTHROW(exact_maf(big, 11));
  CHECK_THROWS_AS(exact_maf(random_pair(33, 1), 40), SizeGateError);
  ::setenv("MAF_ORACLE_CAP", "12", 1);
  CHECK(oracle_cap() == 12);
  ::setenv("MAF_ORACLE_CAP", "junk", 1);
  CHECK(oracle_cap() == kDefaultOracleCap);
  ::unsetenv("MAF_ORACLE_CAP");
  CHECK(oracle_cap() == kDefaultOracleCap);
}

TEST_CASE("generators") {
  SUBCASE("determinism") {
    const TreePair a = random_pair(5, 1), b = random_pair(5, 1);
    CHECK(to_newick(a.t1()) == to_newick(b.t1()));
    CHECK(to_newick(a.t2()) == to_newick(b.t2()));
    const TreePair c = random_pair(30, 9, {GenMode::kRspr, 4}), d = random_pair(30, 9, {GenMode::kRspr, 4});
    CHECK(to_newick(c.t2()) == to_newick(d.t2()));
    CHECK(to_newick(random_pair(30, 10).t1()) != to_newick(random_pair(30, 11).t1()));
  }
  SUBCASE("labels") {
    const TreePair p = random_pair(6, 2);
    for (int i = 1; i <= 6; ++i) CHECK(p.leaf_id(std::to_string(i)) != kNoLeaf);
  }
  SUBCASE("zero moves") {
    const TreePair p = random_pair(9, 3, {GenMode::kRspr, 0});
    CHECK(to_newick(p.t1()) == to_newick(p.t2()));
    CHECK(exact_maf(p).value == 0);
  }
  SUBCASE("k moves bound the distance") {
    for (uint64_t seed = 1; seed <= 60; ++seed) {
      const int n = 4 + static_cast<int>(seed % 7);
      const int k = 1 + static_cast<int>(seed % 3);
      const TreePair p = random_pair(n, seed, {GenMode::kRspr, k});
      REQUIRE(exact_maf(p).value <= k);
    }
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(random_pair(1, 1), InputError);
    CHECK_THROWS_AS(random_pair(5, 1, {GenMode::kRspr, 5}), InputError);
  }
  SUBCASE("shapes are spread out") {
    // all 15 rooted shapes on 4 labels show up
    std::set<std::string> seen;
    for (uint64_t seed = 1; seed <= 400; ++seed) seen.insert(to_newick(random_pair(4, seed).t1()));
    CHECK(seen.size() == 15);
  }
}

TEST_CASE("instance checks") {
  const RunReport r = check_instance(fig9_instance().pair, "fig9", {.dual_every_iteration = true});
  CHECK(r.ok());
  REQUIRE(r.exact);
  CHECK(*r.exact == 5);
  CHECK(r.dual <= 5);
  CHECK(r.value <= 10);
  CHECK(r.iterations > 0);
  const auto j = report_json(r);
  CHECK(j.at("id") == "fig9");
  CHECK(j.at("exact") == 5);
}

TEST_CASE("fuzz summary") {
  FuzzOptions o;
  o.n = 7;
  o.iters = 40;
  o.seed = 3;
  int seen = 0;
  const FuzzSummary s = fuzz(o, [&](const RunReport&) { ++seen; });
  CHECK(s.instances == 40);
  CHECK(seen == 40);
  CHECK(s.failures == 0);
  CHECK(s.oracle_runs == 40);
  CHECK(s.max_ratio <= 2.0);
  // reproducible
  const FuzzSummary again = fuzz(o);
  CHECK(again.max_ratio == s.max_ratio);
}

TEST_CASE("result json") {
  const TreePair pair = fig1_instance().pair;
  const RedBlueResult r = run_red_blue(pair);
  const auto j = result_json(pair, r);
  CHECK(j.at("value") == r.value);
  CHECK(j.at("dual") == r.dual_objective);
  CHECK(j.at("forest").size() == r.forest.size());
  CHECK(j.at("certificate").at("D") == r.dual_objective);
  int64_t sum = 0;
  for (const auto& [key, v] : j.at("certificate").at("y").items()) {
    CHECK(key[0] == 't');
    sum += v.get<int64_t>();
  }
  CHECK(sum == r.dual.sum_y());
}
