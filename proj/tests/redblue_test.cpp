#include <doctest.h>

#include <map>
#include <random>

#include "maf/errors.hpp"
#include "maf/generators.hpp"
#include "maf/instances.hpp"
#include "maf/redblue.hpp"
#include "support.hpp"

using namespace maf;
using namespace maf::test;

namespace {

struct Fig1 {
  TreePair pair = fig1_instance().pair;
  // lca1(R ∪ B) with R = {r1, r2}, B = {b1, b2}
  NodeId u = pair.lca_of(1, ids(pair, {"b1", "b2", "r1", "r2"}));
  NodeId lca2(std::initializer_list<const char*> labels) const { return pair.lca_of(2, ids(pair, labels)); }
};

std::vector<ComponentId> origin_of(const Partition& p) {
  std::vector<ComponentId> out(p.pair().n());
  for (LeafId x = 0; x < p.pair().n(); ++x) out[x] = p.component_of(x);
  return out;
}

Partition random_state(const TreePair& pair, std::mt19937_64& rng, int splits) {
  Partition p(pair);
  const int m = pair.t2().node_count();
  for (int tries = 0; tries < 20 * splits && p.size() <= splits; ++tries) {
    const NodeId v = static_cast<NodeId>(rng() % (m - 1));
    if (p.cut_above(v)) continue;
    try {
      p.split_below(v);
    } catch (const InputError&) {
    }
  }
  return p;
}

}  // namespace

TEST_CASE("lowest pcs and case on the example states") {
  const Fig1 f;
  const TreePair& pair = f.pair;
  struct Row {
    Blocks blocks;
    char condition;
    Case c;
  };
  const std::vector<Row> rows{
      {blocks_of(pair, {{"b1", "b2", "r1", "r2", "w1", "w2", "w3"}}), 'a', Case::kOne},
      {blocks_of(pair, {{"b1"}, {"b2", "w1"}, {"r1", "r2", "w2", "w3"}}), 'b', Case::kTwo},
      {blocks_of(pair, {{"r1"}, {"b1", "b2", "w1", "r2", "w2"}, {"w3"}}), 'c', Case::kThree},
  };
  for (const Row& row : rows) {
    const Partition p = Partition::from_components(pair, row.blocks);
    const auto pcs = find_lowest_pcs(p);
    REQUIRE(pcs);
    CHECK(pcs->u == f.u);
    CHECK(pcs->condition == row.condition);
    const Coloring c = make_coloring(pair, pcs->u, pcs->condition);
    CHECK(c.red == 2);
    CHECK(c.blue == 2);
    CHECK(c.color[pair.leaf_id("r1")] == kRed);
    CHECK(c.color[pair.leaf_id("b2")] == kBlue);
    CHECK(c.color[pair.leaf_id("w3")] == kWhite);
    CHECK(classify_case(p, c) == row.c);
  }
  Blocks singles;
  for (LeafId x = 0; x < pair.n(); ++x) singles.push_back({x});
  CHECK_FALSE(find_lowest_pcs(Partition::from_components(pair, singles)));
}

TEST_CASE("lowest pcs against the definition") {
  std::mt19937_64 rng(41);
  int found = 0;
  for (int round = 0; round < 300; ++round) {
    const int n = 3 + round % 6;
    const TreePair pair = random_pair(n, 1000 + round);
    const Partition p = random_state(pair, rng, static_cast<int>(rng() % n));
    const Blocks blocks = p.blocks();
    const auto pcs = find_lowest_pcs(p);
    REQUIRE(pcs.has_value() == !naive_feasible(pair, blocks));
    CHECK(is_feasible(p) == naive_feasible(pair, blocks));
    if (!pcs) continue;
    ++found;
    // descendants come first in post-order, so the first pcs is a lowest one
    NodeId first = kNoNode;
    for (NodeId v = 0; v < pair.t1().node_count() && first == kNoNode; ++v)
      if (!pair.t1().is_leaf(v) && naive_pcs(pair, blocks, v).any()) first = v;
    REQUIRE(pcs->u == first);
    const PcsClauses k = naive_pcs(pair, blocks, pcs->u);
    CHECK(((pcs->condition == 'a' && k.a) || (pcs->condition == 'b' && k.b) || (pcs->condition == 'c' && k.c)));
  }
  CHECK(found > 100);
}

TEST_CASE("first iteration on the example") {
  const Fig1 f;
  const TreePair& pair = f.pair;
  Partition p(pair);
  p.set_generation(1);
  const auto origin = origin_of(p);
  const Coloring c = make_coloring(pair, f.u, 'a');
  DualState dual(pair);
  std::vector<StarEvent> stars;
  IterationScope scope{&dual, &stars, nullptr, 1};

  CHECK(make_rb_compatible(p, c, scope) == 1);
  CHECK(p.blocks() == blocks_of(pair, {{"b1", "r1"}, {"b2", "w1", "r2", "w2", "w3"}}));
  REQUIRE(stars.size() == 1);
  CHECK(stars[0].tree == 2);
  CHECK(stars[0].node == f.lca2({"b1", "r1"}));
  CHECK(dual.y(2, f.lca2({"b1", "r1"})) == -1);

  // already splittable
  CHECK(make_splittable(p, c, scope) == 0);

  const SplitOutcome so = split(p, c, scope);
  CHECK(so.four_way.size() == 1);
  CHECK_FALSE(so.undo_pair);
  // the four-way split of the second component, and {b1, r1} refined by colour
  CHECK(p.blocks() == blocks_of(pair, {{"b1"}, {"r1"}, {"b2"}, {"r2"}, {"w1", "w2"}, {"w3"}}));
  CHECK(stars.back().node == f.lca2({"b2", "r2"}));

  const auto mp = find_merge_pair(p, c, origin, 1);
  REQUIRE(mp);
  CHECK(mp->x1 == pair.leaf_id("b1"));
  CHECK(mp->x2 == pair.leaf_id("r1"));
  CHECK(mp->rule == 'c');
  merge_components(p, {*mp});
  CHECK(p.blocks() == blocks_of(pair, {{"b1", "r1"}, {"b2"}, {"r2"}, {"w1", "w2"}, {"w3"}}));
}

TEST_CASE("make splittable in case 3") {
  const Fig1 f;
  const TreePair& pair = f.pair;
  Partition p = Partition::from_components(pair, blocks_of(pair, {{"r1"}, {"b1", "b2", "w1", "r2", "w2"}, {"w3"}}));
  const Coloring c = make_coloring(pair, f.u, 'c');
  IterationScope scope;
  CHECK(make_rb_compatible(p, c, scope) == 0);
  CHECK(make_splittable(p, c, scope) == 1);
  CHECK(p.blocks() == blocks_of(pair, {{"r1"}, {"b2", "w1"}, {"b1", "r2", "w2"}, {"w3"}}));
  split(p, c, scope);
  CHECK(p.blocks().size() == 7);
}

TEST_CASE("unicolored partitions are left alone") {
  const Fig1 f;
  const TreePair& pair = f.pair;
  Blocks singles;
  for (LeafId x = 0; x < pair.n(); ++x) singles.push_back({x});
  Partition p = Partition::from_components(pair, singles);
  const Coloring c = make_coloring(pair, f.u);
  IterationScope scope;
  CHECK(make_rb_compatible(p, c, scope) == 0);
  CHECK(make_splittable(p, c, scope) == 0);
  CHECK(split(p, c, scope).refinements == 0);
  CHECK(p.blocks() == singles);
}

TEST_CASE("full runs") {
  SUBCASE("identical trees") {
    const TreePair pair = pair_of("(((a,b),c),(d,e));", "((d,e),(c,(b,a)));");
    const RedBlueResult r = run_red_blue(pair);
    CHECK(r.value == 0);
    CHECK(r.forest.size() == 1);
    CHECK(r.iterations.empty());
  }
  SUBCASE("two leaves") {
    const RedBlueResult r = run_red_blue(pair_of("(a,b);", "(b,a);"));
    CHECK(r.value == 0);
  }
  SUBCASE("first example") {
    const TreePair pair = fig1_instance().pair;
    RunOptions strict;
    strict.strict = true;
    const RedBlueResult r = run_red_blue(pair, strict);
    const int opt = naive_maf(pair);
    CHECK(naive_feasible(pair, r.forest));
    CHECK(r.value <= 2 * opt);
    CHECK(r.dual_objective <= opt);
    CHECK(r.value <= 2 * r.dual_objective);
  }
  SUBCASE("second example") {
    const TreePair pair = fig9_instance().pair;
    RunOptions strict;
    strict.strict = true;
    const RedBlueResult r = run_red_blue(pair, strict);
    CHECK(naive_feasible(pair, r.forest));
    CHECK(r.value <= 10);
    CHECK(r.value <= 2 * r.dual_objective);
    CHECK(r.dual_objective <= 5);
  }
}

TEST_CASE("iteration invariants on random runs") {
  int undo_pairs = 0, four_way = 0;
  for (uint64_t seed = 1; seed <= 150; ++seed) {
    const int n = 4 + static_cast<int>(seed % 9);
    const TreePair pair = random_pair(n, seed, seed % 2 ? GenMode{} : GenMode{GenMode::kRspr, 2});
    std::vector<Blocks> ends;
    std::vector<Coloring> colors;
    std::vector<std::optional<MergePair>> pairs;
    RunOptions opts;
    opts.record_snapshots = true;
    opts.on_iteration = [&](const Partition& p, const DualState&, const IterationRecord& rec) {
      ends.push_back(p.blocks());
      colors.push_back(rec.coloring);
      pairs.push_back(rec.pair);
    };
    const RedBlueResult r = run_red_blue(pair, opts);
    REQUIRE(naive_feasible(pair, r.forest));
    int stars = 0;
    for (size_t i = 0; i < r.iterations.size(); ++i) {
      const IterationRecord& rec = r.iterations[i];
      stars += static_cast<int>(rec.stars.size());
      CHECK(rec.identity_ok);
      CHECK(rec.ledger_ok);
      CHECK(rec.balance_ok);
      CHECK(((rec.tricolored == 1 && rec.multicolored == 1) || (rec.tricolored == 0 && rec.multicolored <= 2)));
      REQUIRE(rec.snapshots.size() == 4);
      // successive refinements
      for (int s = 1; s < 4; ++s)
        for (const auto& b : rec.snapshots[s]) {
          bool inside = false;
          for (const auto& a : rec.snapshots[s - 1])
            inside = inside || std::includes(a.begin(), a.end(), b.begin(), b.end());
          REQUIRE(inside);
        }
      std::vector<LeafId> rb;
      for (LeafId x = 0; x < n; ++x)
        if (colors[i].in_rb(x)) rb.push_back(x);
      CHECK(is_K_feasible(pair, ends[i], rb));
      if (pairs[i]) {
        undo_pairs += pairs[i]->rule == 'a';
        CHECK(colors[i].in_rb(pairs[i]->x1));
        CHECK(colors[i].in_rb(pairs[i]->x2));
      }
      // R ∪ B leaves together at the end of an iteration stay together
      for (size_t later = i; later < ends.size(); ++later)
        for (const auto& b : ends[i]) {
          std::vector<LeafId> rbb = intersect(b, rb);
          if (rbb.size() < 2) continue;
          bool together = false;
          for (const auto& a : ends[later]) together = together || std::includes(a.begin(), a.end(), rbb.begin(), rbb.end());
          REQUIRE(together);
        }
      for (const auto& s : rec.stars) four_way += s.procedure == "special-split";
    }
    CHECK(stars == r.dual.decrements());
    CHECK(r.dual.sealed());
  }
  // both special-split branches came up
  CHECK(undo_pairs > 0);
  CHECK(four_way > 0);
}

TEST_CASE("trace records") {
  const TreePair pair = fig1_instance().pair;
  MemorySink sink;
  RunOptions opts;
  opts.sink = &sink;
  const RedBlueResult r = run_red_blue(pair, opts);
  std::map<std::string, int> kinds;
  for (const auto& rec : sink.records) ++kinds[rec.at("event").get<std::string>()];
  CHECK(kinds["iteration_start"] == static_cast<int>(r.iterations.size()));
  CHECK(kinds["iteration_end"] == static_cast<int>(r.iterations.size()));
  CHECK(kinds["star"] == r.dual.decrements());
  // the first refinement of the run splits off {b1, r1}
  for (const auto& rec : sink.records) {
    if (rec.at("event") != "split") continue;
    CHECK(rec.at("procedure") == "make-rb-compatible");
    CHECK(rec.at("node") == pair.lca_of(2, ids(pair, {"b1", "r1"})));
    CHECK(rec.at("parts")[0] == nlohmann::json::array({"b1", "r1"}));
    break;
  }
}

TEST_CASE("merge components refuses a joined pair") {
  const TreePair pair = fig1_instance().pair;
  Partition p(pair);
  CHECK_THROWS_AS(merge_components(p, {MergePair{0, 1, 'b'}}), InvariantError);
  Partition q(pair);
  merge_components(q, {});
  CHECK(q.size() == 1);
}
