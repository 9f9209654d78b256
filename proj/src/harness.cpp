#include <algorithm>
#include <chrono>

#include "maf/errors.hpp"
#include "maf/harness.hpp"
#include "maf/oracle.hpp"
#include "maf/trace.hpp"

namespace maf {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

}  // namespace

RunReport check_instance(const TreePair& pair, const std::string& id, const CheckOptions& options) {
  RunReport r;
  r.id = id;
  r.n = pair.n();
  auto fail = [&](std::string what) { r.violations.push_back(std::move(what)); };

  const bool dual_check = options.dual_every_iteration && pair.n() <= options.dual_n_cap;
  RunOptions run;
  run.strict = options.strict;
  run.on_iteration = [&](const Partition& p, const DualState& dual, const IterationRecord& rec) {
    const std::string at = "iteration " + std::to_string(rec.index) + ": ";
    if (!rec.identity_ok) fail(at + "case identity failed");
    if (!rec.ledger_ok) fail(at + "2dD < dP");
    if (!rec.balance_ok) fail(at + "2D < |P| - 1 - |pairs|");
    if (dual_check) {
      const auto start = Clock::now();
      if (!verify_dual_feasibility(dual, p)) fail(at + "dual infeasible");
      r.dual_check_ms += ms_since(start);
    }
  };

  RedBlueResult res;
  const auto start = Clock::now();
  try {
    res = run_red_blue(pair, run);
  } catch (const std::exception& e) {
    fail(std::string("run aborted: ") + e.what());
    return r;
  }
  r.solve_ms = ms_since(start);
  r.value = res.value;
  r.dual = res.dual_objective;
  r.iterations = static_cast<int>(res.iterations.size());

  if (!is_feasible_maf(pair, res.forest)) fail("final forest infeasible");
  if (r.value > 2 * r.dual) fail("value > 2D");
  if (-res.dual.sum_y() != [&] {
        int64_t stars = 0;
        for (const auto& it : res.iterations) stars += static_cast<int64_t>(it.stars.size());
        return stars;
      }())
    fail("star count differs from -sum y");
  if (dual_check) {
    const Partition final_p = Partition::from_components(pair, res.forest);
    if (!verify_dual_feasibility(res.dual, final_p)) fail("dual infeasible after merging");
  }
  if (r.dual > 0) r.ratio_dual = static_cast<double>(r.value) / (2.0 * static_cast<double>(r.dual));

  if (options.oracle && pair.n() <= oracle_cap()) {
    const auto ostart = Clock::now();
    const ExactResult ex = exact_maf(pair);
    r.oracle_ms = ms_since(ostart);
    r.exact = ex.value;
    if (r.dual > ex.value) fail("D > OPT");
    if (ex.value > r.value) fail("OPT > value");
    if (r.value > 2 * ex.value) fail("value > 2 OPT");
    if (ex.value > 0) r.ratio_exact = static_cast<double>(r.value) / ex.value;
  }
  return r;
}

FuzzSummary fuzz(const FuzzOptions& options, const std::function<void(const RunReport&)>& on_report) {
  FuzzSummary s;
  Rng seeds(options.seed);
  for (int i = 0; i < options.iters; ++i) {
    const uint64_t seed = seeds();
    RunReport r;
    const std::string id = "n" + std::to_string(options.n) + "-" + std::to_string(seed);
    try {
      r = check_instance(random_pair(options.n, seed, options.mode), id, options.checks);
    } catch (const std::exception& e) {
      r.id = id;
      r.n = options.n;
      r.violations.push_back(std::string("instance error: ") + e.what());
    }
    ++s.instances;
    if (r.exact) ++s.oracle_runs;
    s.max_ratio = std::max(s.max_ratio, r.ratio_exact);
    if (!r.ok()) {
      ++s.failures;
      s.failed.push_back(r);
    }
    if (on_report) on_report(r);
  }
  return s;
}

std::vector<BenchRow> bench(const std::vector<int>& sizes, uint64_t seed, int per_size, int repeats) {
  std::vector<std::vector<TreePair>> pairs(sizes.size());
  std::vector<std::vector<double>> best(sizes.size(), std::vector<double>(per_size, 0.0));
  std::vector<double> values(sizes.size(), 0.0);
  for (size_t k = 0; k < sizes.size(); ++k)
    for (int i = 0; i < per_size; ++i) pairs[k].push_back(random_pair(sizes[k], seed + static_cast<uint64_t>(i)));
  // rounds sweep all sizes, so drift in machine load hits every size alike
  for (int rep = 0; rep < std::max(1, repeats); ++rep)
    for (size_t k = 0; k < sizes.size(); ++k)
      for (int i = 0; i < per_size; ++i) {
        const auto start = Clock::now();
        const RedBlueResult res = run_red_blue(pairs[k][i]);
        const double ms = ms_since(start);
        if (rep == 0 || ms < best[k][i]) best[k][i] = ms;
        if (rep == 0) values[k] += res.value;
      }
  std::vector<BenchRow> rows;
  for (size_t k = 0; k < sizes.size(); ++k) {
    std::vector<double> times = best[k];
    std::sort(times.begin(), times.end());
    BenchRow row;
    row.n = sizes[k];
    row.instances = per_size;
    row.median_ms = times[times.size() / 2];
    row.min_ms = times.front();
    row.mean_value = values[k] / per_size;
    rows.push_back(row);
  }
  return rows;
}

nlohmann::json report_json(const RunReport& r) {
  nlohmann::json j{{"id", r.id},
                   {"n", r.n},
                   {"value", r.value},
                   {"dual", r.dual},
                   {"exact", r.exact ? nlohmann::json(*r.exact) : nlohmann::json()},
                   {"ratio_exact", r.ratio_exact},
                   {"ratio_dual", r.ratio_dual},
                   {"iterations", r.iterations},
                   {"timings_ms", {{"solve", r.solve_ms}, {"oracle", r.oracle_ms}, {"dual_check", r.dual_check_ms}}},
                   {"violations", r.violations}};
  return j;
}

nlohmann::json result_json(const TreePair& pair, const RedBlueResult& result) {
  nlohmann::json y = nlohmann::json::object();
  for (int t = 1; t <= 2; ++t) {
    const auto& values = result.dual.y_values(t);
    for (NodeId v = 0; v < static_cast<NodeId>(values.size()); ++v)
      if (values[v] != 0) y["t" + std::to_string(t) + "_" + std::to_string(v)] = values[v];
  }
  nlohmann::json pairs = nlohmann::json::array();
  for (const MergePair& mp : result.pairs)
    pairs.push_back({{"x1", pair.label(mp.x1)}, {"x2", pair.label(mp.x2)}, {"rule", std::string(1, mp.rule)}});
  const int64_t d = result.dual_objective;
  return {{"value", result.value},
          {"dual", d},
          {"components_before_merge", result.components_before_merge},
          {"forest", blocks_json(pair, result.forest)},
          {"pairs", pairs},
          {"certificate",
           {{"y", y},
            {"D", d},
            {"lower_bound", d},
            {"ratio_bound", d > 0 ? nlohmann::json(static_cast<double>(result.value) / d) : nlohmann::json()}}}};
}

}  // namespace maf
