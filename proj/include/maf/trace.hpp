#pragma once

#include <ostream>
#include <span>
#include <vector>

#include <json.hpp>

#include "maf/partition.hpp"

namespace maf {

// Receives one JSON object per trace event.
class TraceSink {
 public:
  virtual ~TraceSink() = default;
  virtual void emit(const nlohmann::json& record) = 0;
};

// Writes each record as one line of compact JSON.
class JsonLinesSink : public TraceSink {
 public:
  explicit JsonLinesSink(std::ostream& out) : out_(out) {}
  void emit(const nlohmann::json& record) override;

 private:
  std::ostream& out_;
};

// Keeps records in memory (tests, replay).
class MemorySink : public TraceSink {
 public:
  void emit(const nlohmann::json& record) override { records.push_back(record); }
  std::vector<nlohmann::json> records;
};

nlohmann::json labels_json(const TreePair& pair, std::span<const LeafId> leaves);
nlohmann::json blocks_json(const TreePair& pair, const std::vector<std::vector<LeafId>>& blocks);
// {"components": [[labels]...], "deleted_edges": [[labels below the child node]...]}
nlohmann::json partition_json(const Partition& p);

}  // namespace maf
