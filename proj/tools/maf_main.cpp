// maf: command-line driver for the Red-Blue approximation, the exact oracle,
// LP emission, instance generation and the fuzz/bench harness.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "maf/errors.hpp"
#include "maf/generators.hpp"
#include "maf/harness.hpp"
#include "maf/instances.hpp"
#include "maf/lp_builders.hpp"
#include "maf/oracle.hpp"
#include "maf/redblue.hpp"
#include "maf/trace.hpp"

using namespace maf;
using nlohmann::json;

namespace {

constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TreePair load_pair(const std::string& t1, const std::string& t2, bool add_rho = false) {
  return TreePair::make(parse_newick(slurp(t1)), parse_newick(slurp(t2)), add_rho);
}

std::string forest_text(const TreePair& pair, const std::vector<std::vector<LeafId>>& forest) {
  std::string out;
  for (const auto& block : forest) {
    out += out.empty() ? "{" : " {";
    for (size_t i = 0; i < block.size(); ++i) out += (i ? "," : "") + pair.label(block[i]);
    out += "}";
  }
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

void warn_oracle_cap() {
  if (oracle_cap() > kDefaultOracleCap)
    std::cerr << "warning: exact oracle cap raised to " << oracle_cap() << "; runs may take very long\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maximum agreement forests: 2-approximation with dual certificate"};
  app.require_subcommand(1);

  std::string t1, t2;
  bool add_rho = false, as_json = false;
  std::string trace_path;
  auto* solve = app.add_subcommand("solve", "run the Red-Blue algorithm");
  solve->add_option("t1", t1)->required();
  solve->add_option("t2", t2)->required();
  solve->add_flag("--add-rho", add_rho, "add a sibling leaf 'rho' above both roots");
  solve->add_option("--trace", trace_path, "write JSON-lines trace");
  solve->add_flag("--json", as_json);

  auto* exact = app.add_subcommand("exact", "exact MAF value by enumeration");
  exact->add_option("t1", t1)->required();
  exact->add_option("t2", t2)->required();
  exact->add_flag("--json", as_json);

  auto* check_dual = app.add_subcommand("check-dual", "run and verify dual feasibility after every iteration");
  check_dual->add_option("t1", t1)->required();
  check_dual->add_option("t2", t2)->required();
  check_dual->add_flag("--add-rho", add_rho);

  std::string lp_kind, out_path;
  bool lp_integer = false;
  auto* emit = app.add_subcommand("emit-lp", "write an LP file");
  emit->add_option("kind", lp_kind)->required()->check(CLI::IsMember({"exp", "compact", "wu"}));
  emit->add_option("t1", t1)->required();
  emit->add_option("t2", t2)->required();
  emit->add_option("-o,--output", out_path)->required();
  emit->add_flag("--integer", lp_integer, "declare x_L general integers (exp); wu is always integer");

  std::string point_path;
  auto* check_point = app.add_subcommand("check-point", "check a JSON point {var: value} against a model");
  check_point->add_option("kind", lp_kind)->required()->check(CLI::IsMember({"exp", "compact", "wu"}));
  check_point->add_option("t1", t1)->required();
  check_point->add_option("t2", t2)->required();
  check_point->add_option("point", point_path)->required();

  std::string gen_kind;
  int gen_n = 8, gen_k = 2;
  uint64_t seed = 1;
  std::string prefix;
  auto* gen = app.add_subcommand("gen", "write Newick fixtures");
  gen->add_option("kind", gen_kind)->required()->check(CLI::IsMember({"random", "krspr", "wu", "fig1", "fig9"}));
  gen->add_option("--n", gen_n, "leaves (random, krspr)");
  gen->add_option("--k", gen_k, "SPR moves (krspr) or depth (wu)");
  gen->add_option("--seed", seed);
  gen->add_option("-o,--output", prefix, "write <prefix>.t1.nwk and <prefix>.t2.nwk");
  gen->add_option("--point", point_path, "write the fractional point (wu, fig9) as JSON");

  FuzzOptions fo;
  std::string fuzz_mode = "uniform";
  bool fuzz_dual = false, fuzz_lines = false;
  auto* fz = app.add_subcommand("fuzz", "sandwich checks on random instances");
  fz->add_option("--n", fo.n);
  fz->add_option("--iters", fo.iters);
  fz->add_option("--seed", fo.seed);
  fz->add_option("--mode", fuzz_mode)->check(CLI::IsMember({"uniform", "krspr"}));
  fz->add_option("--k", fo.mode.k);
  fz->add_flag("--dual", fuzz_dual, "verify dual feasibility after every iteration");
  fz->add_flag("--json", fuzz_lines, "print one JSON report per instance");

  std::vector<int> sizes{1000, 2000, 4000};
  int per_size = 3;
  int repeats = 1;
  auto* bn = app.add_subcommand("bench", "runtime table on random instances");
  bn->add_option("--sizes", sizes)->delimiter(',');
  bn->add_option("--seed", seed);
  bn->add_option("--per-size", per_size)->check(CLI::PositiveNumber);
  bn->add_option("--repeats", repeats, "time each instance this often, keep the fastest")->check(CLI::PositiveNumber);
  bn->add_flag("--json", as_json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*solve) {
      const TreePair pair = load_pair(t1, t2, add_rho);
      std::ofstream trace_file;
      std::unique_ptr<JsonLinesSink> sink;
      if (!trace_path.empty()) {
        trace_file.open(trace_path);
        if (!trace_file) throw InputError("cannot write " + trace_path);
        sink = std::make_unique<JsonLinesSink>(trace_file);
      }
      RunOptions opts;
      opts.sink = sink.get();
      opts.record_snapshots = sink != nullptr;
      const RedBlueResult res = run_red_blue(pair, opts);
      if (as_json) {
        std::cout << result_json(pair, res).dump() << "\n";
      } else {
        std::cout << "value " << res.value << "\n"
                  << "dual " << res.dual_objective << "\n"
                  << "forest " << forest_text(pair, res.forest) << "\n";
      }
      return 0;
    }
    if (*exact) {
      warn_oracle_cap();
      const TreePair pair = load_pair(t1, t2);
      const ExactResult ex = exact_maf(pair);
      if (as_json)
        std::cout << json{{"value", ex.value}, {"forest", blocks_json(pair, ex.forest)}}.dump() << "\n";
      else
        std::cout << ex.value << "\n";
      return 0;
    }
    if (*check_dual) {
      const TreePair pair = load_pair(t1, t2, add_rho);
      if (pair.n() > kDefaultEnumerationCap)
        throw SizeGateError("check-dual refuses n=" + std::to_string(pair.n()));
      int bad = 0;
      RunOptions opts;
      opts.on_iteration = [&](const Partition& p, const DualState& dual, const IterationRecord& rec) {
        const bool ok = verify_dual_feasibility(dual, p);
        bad += !ok;
        std::cout << "iteration " << rec.index << " D=" << rec.dual_after << (ok ? " feasible" : " INFEASIBLE")
                  << "\n";
      };
      const RedBlueResult res = run_red_blue(pair, opts);
      const bool ok = verify_dual_feasibility(res.dual, Partition::from_components(pair, res.forest));
      bad += !ok;
      std::cout << "final value=" << res.value << " D=" << res.dual_objective << (ok ? " feasible" : " INFEASIBLE")
                << "\n";
      return bad ? kExitViolation : 0;
    }
    if (*emit || *check_point) {
      const TreePair pair = load_pair(t1, t2);
      std::unique_ptr<CompactLpGraph> graph;
      LpModel model;
      if (lp_kind == "exp") {
        model = build_exponential_lp(pair, lp_integer);
      } else if (lp_kind == "compact") {
        graph = std::make_unique<CompactLpGraph>(pair);
        model = build_compact_lp(*graph);
      } else {
        model = build_wu_ilp(pair, !*check_point);
      }
      if (*emit) {
        write_lp_file(model, out_path);
        std::cout << "wrote " << out_path << " (" << model.variables().size() << " variables, "
                  << model.constraints().size() << " rows)\n";
        return 0;
      }
      const json pj = json::parse(slurp(point_path));
      LpPoint point;
      for (const auto& [k, v] : pj.items()) point[k] = v.get<double>();
      const PointReport rep = check_feasible_point(model, point);
      std::cout << json{{"feasible", rep.feasible}, {"objective", rep.objective},
                        {"max_violation", rep.max_violation}, {"violations", rep.violations}}
                       .dump()
                << "\n";
      return rep.feasible ? 0 : kExitViolation;
    }
    if (*gen) {
      TreePair pair;
      json point;
      if (gen_kind == "random") {
        pair = random_pair(gen_n, seed);
      } else if (gen_kind == "krspr") {
        pair = random_pair(gen_n, seed, {GenMode::kRspr, gen_k});
      } else if (gen_kind == "wu") {
        pair = wu_gap_instance(gen_k);
        point = wu_gap_fractional(pair, gen_k);
      } else {
        const NamedInstance inst = gen_kind == "fig1" ? fig1_instance() : fig9_instance();
        pair = inst.pair;
        if (gen_kind == "fig9") point = fig9_fractional_point(pair);
      }
      const std::string a = to_newick(pair.t1()) + "\n", b = to_newick(pair.t2()) + "\n";
      if (prefix.empty()) {
        std::cout << a << b;
      } else {
        write_text(prefix + ".t1.nwk", a);
        write_text(prefix + ".t2.nwk", b);
      }
      if (!point_path.empty()) {
        if (point.is_null()) throw InputError("only wu and fig9 come with a fractional point");
        write_text(point_path, point.dump(2) + "\n");
      }
      return 0;
    }
    if (*fz) {
      if (fuzz_mode == "krspr") fo.mode.kind = GenMode::kRspr;
      fo.checks.dual_every_iteration = fuzz_dual;
      warn_oracle_cap();
      const FuzzSummary s = fuzz(fo, [&](const RunReport& r) {
        if (fuzz_lines) std::cout << report_json(r).dump() << "\n";
      });
      for (const RunReport& r : s.failed) {
        std::cerr << "FAIL " << r.id;
        for (const auto& v : r.violations) std::cerr << " | " << v;
        std::cerr << "\n";
      }
      std::cout << "instances " << s.instances << " oracle " << s.oracle_runs << " failures " << s.failures
                << " max_ratio " << s.max_ratio << "\n";
      return s.failures ? kExitViolation : 0;
    }
    if (*bn) {
      const std::vector<BenchRow> rows = bench(sizes, seed, per_size, repeats);
      if (as_json) {
        json out = json::array();
        for (const BenchRow& r : rows)
          out.push_back({{"n", r.n}, {"instances", r.instances}, {"median_ms", r.median_ms}, {"min_ms", r.min_ms},
                         {"mean_value", r.mean_value}});
        std::cout << out.dump() << "\n";
        return 0;
      }
      std::printf("%8s %6s %12s %12s %10s %8s\n", "n", "runs", "median_ms", "min_ms", "value", "ratio");
      for (size_t i = 0; i < rows.size(); ++i) {
        const BenchRow& r = rows[i];
        std::string ratio = "-";
        if (i > 0 && rows[i - 1].median_ms > 0) {
          char buf[32];
          std::snprintf(buf, sizeof buf, "%.2f", r.median_ms / rows[i - 1].median_ms);
          ratio = buf;
        }
        std::printf("%8d %6d %12.2f %12.2f %10.1f %8s\n", r.n, r.instances, r.median_ms, r.min_ms, r.mean_value,
                    ratio.c_str());
      }
      return 0;
    }
  } catch (const InvariantError& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return kExitViolation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
