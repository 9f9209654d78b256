#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "maf/generators.hpp"
#include "maf/redblue.hpp"

namespace maf {

struct RunReport {
  std::string id;
  int n = 0;
  int value = 0;
  int64_t dual = 0;
  std::optional<int> exact;
  double ratio_exact = 0;  // value / exact (0 when exact is 0 or absent)
  double ratio_dual = 0;   // value / (2D) (0 when D is 0)
  double solve_ms = 0;
  double oracle_ms = 0;
  double dual_check_ms = 0;
  int iterations = 0;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

struct CheckOptions {
  bool oracle = true;            // compare with exact_maf (skipped above its cap)
  bool dual_every_iteration = false;
  int dual_n_cap = 10;           // enumeration gate for the dual check
  bool strict = false;           // RunOptions::strict
};

// Runs the algorithm on one instance and collects every violated guarantee:
// D <= OPT <= value <= 2D, per-iteration identities and balance, feasibility
// of the final forest, one star per unit of -Σy and, optionally, dual
// feasibility after each iteration and after merging. Exceptions thrown by
// the run are reported as violations.
RunReport check_instance(const TreePair& pair, const std::string& id, const CheckOptions& options = {});

struct FuzzOptions {
  int n = 8;
  int iters = 1000;
  uint64_t seed = 1;
  GenMode mode;
  CheckOptions checks;
};

struct FuzzSummary {
  int instances = 0;
  int failures = 0;
  int oracle_runs = 0;
  double max_ratio = 0;
  std::vector<RunReport> failed;
};

// Instance i uses the i-th draw of an mt19937_64 seeded with options.seed.
FuzzSummary fuzz(const FuzzOptions& options, const std::function<void(const RunReport&)>& on_report = {});

struct BenchRow {
  int n = 0;
  int instances = 0;
  double median_ms = 0;
  double min_ms = 0;
  double mean_value = 0;
};

// Each instance is timed once per round, `repeats` rounds over all sizes,
// and its fastest run kept.
std::vector<BenchRow> bench(const std::vector<int>& sizes, uint64_t seed, int per_size = 3, int repeats = 1);

nlohmann::json report_json(const RunReport& r);
// {"value", "dual", "components_before_merge", "forest", "pairs",
//  "certificate": {"y", "D", "lower_bound", "ratio_bound"}}
nlohmann::json result_json(const TreePair& pair, const RedBlueResult& result);

}  // namespace maf
