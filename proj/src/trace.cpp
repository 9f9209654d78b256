#include "maf/trace.hpp"

#include <algorithm>
#include <string>

namespace maf {

void JsonLinesSink::emit(const nlohmann::json& record) { out_ << record.dump() << '\n'; }

nlohmann::json labels_json(const TreePair& pair, std::span<const LeafId> leaves) {
  std::vector<std::string> out;
  out.reserve(leaves.size());
  for (LeafId x : leaves) out.push_back(pair.label(x));
  std::sort(out.begin(), out.end());
  return out;
}

nlohmann::json blocks_json(const TreePair& pair, const std::vector<std::vector<LeafId>>& blocks) {
  std::vector<nlohmann::json> out;
  for (const auto& b : blocks) out.push_back(labels_json(pair, b));
  std::sort(out.begin(), out.end());
  return out;
}

nlohmann::json partition_json(const Partition& p) {
  const TreePair& pair = p.pair();
  std::vector<nlohmann::json> edges;
  for (NodeId v : p.deleted_edges()) {
    std::vector<LeafId> below;
    for (NodeId leaf : pair.t2().leaves_below(v)) below.push_back(pair.leaf_at(2, leaf));
    edges.push_back(labels_json(pair, below));
  }
  std::sort(edges.begin(), edges.end());
  return {{"components", blocks_json(pair, p.blocks())}, {"deleted_edges", edges}};
}

}  // namespace maf
