#include <doctest.h>

#include <random>

#include "maf/errors.hpp"
#include "maf/generators.hpp"
#include "support.hpp"

using namespace maf;
using namespace maf::test;

TEST_CASE("newick parsing") {
  const RootedBinaryTree two = parse_newick("(a,b);");
  CHECK(two.node_count() == 3);
  CHECK(two.leaf_count() == 2);
  CHECK(two.label(two.left(two.root())) == "a");
  CHECK(two.label(two.right(two.root())) == "b");

  const RootedBinaryTree fig1 = parse_newick("((((b1,b2),(r1,r2)),(w1,w2)),w3);");
  CHECK(fig1.leaf_count() == 7);
  CHECK(fig1.node_count() == 13);

  // lengths and internal labels are dropped
  const RootedBinaryTree lengths = parse_newick("((a:1.5,b:2)x:0.1,c:3);");
  CHECK(to_newick(lengths) == "((a,b),c);");

  CHECK_THROWS_AS(parse_newick("(a,(b,c),d);"), ParseError);
  CHECK_THROWS_AS(parse_newick("((a,b),c;"), ParseError);
  CHECK_THROWS_AS(parse_newick(""), ParseError);
  CHECK_THROWS_AS(parse_newick("((a,b),a);"), ParseError);
  CHECK_THROWS_AS(parse_newick("((a),b);"), ParseError);
}

TEST_CASE("post-order ids") {
  std::mt19937_64 rng(3);
  const RootedBinaryTree t = random_tree(40, rng);
  for (NodeId v = 0; v < t.root(); ++v) {
    CHECK(t.parent(v) > v);
    CHECK(t.is_ancestor_or_self(t.parent(v), v));
  }
  for (NodeId v = 0; v < t.node_count(); ++v) {
    CHECK(static_cast<int>(t.leaves_below(v).size()) == t.leaf_count_below(v));
    if (!t.is_leaf(v)) CHECK(t.subtree_size(v) == 1 + t.subtree_size(t.left(v)) + t.subtree_size(t.right(v)));
  }
  CHECK(parse_newick(to_newick(t)).node_count() == t.node_count());
  CHECK(to_newick(parse_newick(to_newick(t))) == to_newick(t));
}

TEST_CASE("canonical newick ignores child order") {
  CHECK(to_newick(parse_newick("((c,b),a);")) == to_newick(parse_newick("(a,(b,c));")));
}

TEST_CASE("lca against parent walking") {
  std::mt19937_64 rng(11);
  const TreePair pair = random_pair(500, 11);
  std::uniform_int_distribution<int> node(0, pair.t1().node_count() - 1);
  for (int q = 0; q < 10000; ++q) {
    const int t = 1 + q % 2;
    const NodeId u = node(rng), v = node(rng);
    REQUIRE(pair.lca(t, u, v) == naive_lca(pair.tree(t), u, v));
  }
  CHECK(pair.lca(1, 5, 5) == 5);
}

TEST_CASE("make pair") {
  const TreePair pair = pair_of("((a,b),c);", "(a,(b,c));");
  CHECK(pair.n() == 3);
  CHECK(pair.label(0) == "a");
  CHECK_FALSE(pair.rho_added());
  CHECK_THROWS_AS(pair_of("((a,b),c);", "((a,b),d);"), InputError);

  const TreePair rho = pair_of("((a,b),c);", "(a,(b,c));", true);
  CHECK(rho.n() == 4);
  CHECK(rho.label(rho.rho()) == "rho");
  for (int t = 1; t <= 2; ++t) CHECK(rho.tree(t).parent(rho.leaf_node(t, rho.rho())) == rho.tree(t).root());
  CHECK_THROWS_AS(pair_of("((a,rho),c);", "(a,(rho,c));", true), InputError);
}

TEST_CASE("compatibility against restricted subtrees") {
  for (uint64_t seed = 1; seed <= 40; ++seed) {
    const TreePair pair = random_pair(7, seed);
    for (LeafId x = 0; x < pair.n(); ++x)
      for (LeafId y = x + 1; y < pair.n(); ++y)
        for (LeafId z = y + 1; z < pair.n(); ++z)
          REQUIRE(pair.triple_compatible(x, y, z) == naive_compatible(pair, {x, y, z}));
    // every subset of size <= 5
    for (int mask = 1; mask < (1 << pair.n()); ++mask) {
      if (__builtin_popcount(mask) > 5) continue;
      std::vector<LeafId> s;
      for (LeafId x = 0; x < pair.n(); ++x)
        if (mask >> x & 1) s.push_back(x);
      REQUIRE(pair.set_compatible(s) == naive_compatible(pair, s));
    }
  }
}

TEST_CASE("spans and overlap") {
  const TreePair pair = random_pair(9, 5);
  std::mt19937_64 rng(5);
  for (int round = 0; round < 200; ++round) {
    std::vector<LeafId> a, b;
    for (LeafId x = 0; x < pair.n(); ++x) {
      const int r = static_cast<int>(rng() % 3);
      if (r == 0) a.push_back(x);
      if (r == 1) b.push_back(x);
    }
    for (int t = 1; t <= 2; ++t) {
      const auto got = pair.spanned_nodes(t, a);
      const auto want = naive_span(pair, t, a);
      REQUIRE(std::set<NodeId>(got.begin(), got.end()) == want);
      if (!a.empty()) CHECK(pair.lca_of(t, a) == *want.rbegin());
      std::set<NodeId> sb = naive_span(pair, t, b), both;
      std::set_intersection(want.begin(), want.end(), sb.begin(), sb.end(), std::inserter(both, both.end()));
      CHECK(pair.sets_overlap(a, b, t) == !both.empty());
    }
  }
  CHECK(pair.spanned_nodes(1, {}).empty());
  CHECK(pair.lca_of(1, {}) == kNoNode);
}
