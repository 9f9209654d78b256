#include <algorithm>
#include <functional>

#include "maf/errors.hpp"
#include "maf/instances.hpp"
#include "maf/lp_builders.hpp"

namespace maf {

namespace {

NamedInstance make(std::string name, std::string t1, std::string t2) {
  NamedInstance inst;
  inst.name = std::move(name);
  inst.t1_newick = std::move(t1);
  inst.t2_newick = std::move(t2);
  inst.pair = TreePair::make(parse_newick(inst.t1_newick), parse_newick(inst.t2_newick));
  return inst;
}

}  // namespace

NamedInstance fig1_instance() {
  return make("fig1", "((((b1,b2),(r1,r2)),(w1,w2)),w3);", "((((b1,r1),(b2,w1)),(r2,w2)),w3);");
}

NamedInstance fig9_instance() {
  NamedInstance inst = make("fig9", "(((((((1,2),3),4),5),6),7),8);", "((((1,5),8),(2,7)),((3,6),4));");
  inst.opt = 5;
  inst.lp_opt = 4.0;
  return inst;
}

std::vector<NamedInstance> fig_instances() { return {fig1_instance(), fig9_instance()}; }

std::vector<std::pair<std::vector<LeafId>, double>> fig9_fractional_sets(const TreePair& pair) {
  auto ids = [&](std::initializer_list<const char*> labels) {
    std::vector<LeafId> out;
    for (const char* l : labels) out.push_back(pair.leaf_id(l));
    std::sort(out.begin(), out.end());
    return out;
  };
  std::vector<std::pair<std::vector<LeafId>, double>> sets{
      {ids({"1", "2", "3"}), 0.5}, {ids({"1", "5", "8"}), 0.5}, {ids({"4", "6", "7"}), 0.5}};
  for (const char* l : {"2", "3", "4", "5", "6", "7", "8"}) sets.push_back({ids({l}), 0.5});
  return sets;
}

LpPoint fig9_fractional_point(const TreePair& pair) {
  LpPoint point;
  for (const auto& [set, w] : fig9_fractional_sets(pair)) point[set_variable_name(pair, set)] += w;
  return point;
}

TreePair wu_gap_instance(int k) {
  if (k < 2 || k > 20 || k % 2 != 0) throw InputError("gap instances need an even depth between 2 and 20");
  auto build = [k](bool reversed) {
    TreeBuilder b;
    std::string path;
    std::function<int(int)> grow = [&](int depth) -> int {
      if (depth == k) {
        std::string label = path;
        if (reversed) std::reverse(label.begin(), label.end());
        return b.add_leaf(label);
      }
      path.push_back('0');
      const int l = grow(depth + 1);
      path.back() = '1';
      const int r = grow(depth + 1);
      path.pop_back();
      return b.add_internal(l, r);
    };
    return b.build(grow(0));
  };
  return TreePair::make(build(false), build(true));
}

LpPoint wu_gap_fractional(const TreePair& pair, int k) {
  const RootedBinaryTree& t1 = pair.t1();
  LpPoint point;
  for (NodeId v = 0; v < t1.node_count(); ++v) {
    const std::string name = "xe_" + std::to_string(v);
    if (t1.is_leaf(v))
      point[name] = 0.25;
    else if (t1.depth(v) == k - 1)
      point[name] = 0.125;
  }
  return point;
}

}  // namespace maf
