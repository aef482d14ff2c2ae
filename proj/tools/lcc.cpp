// Command-line driver for the label-consistent clustering library.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "lcc/corpus.hpp"
#include "lcc/error.hpp"
#include "lcc/gap_instance.hpp"
#include "lcc/io.hpp"
#include "lcc/kcenter.hpp"
#include "lcc/lp_rounding.hpp"
#include "lcc/oracle.hpp"
#include "lcc/pipeline.hpp"
#include "lcc/sweep.hpp"
#include "lcc/tree_embedding.hpp"

namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("LCC_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "ignoring malformed LCC_SEED\n";
    }
  }
  return 1;
}

struct Output {
  bool json = false;
  bool table = false;
  std::string path;

  void add(CLI::App* app) {
    auto* j = app->add_flag("--json", json, "JSON output (default)");
    app->add_flag("--table", table, "Plain-text output")->excludes(j);
    app->add_option("--out", path, "Write to a file instead of stdout");
  }

  void emit(const std::string& json_text, const std::string& table_text) const {
    const std::string& text = table ? table_text : json_text;
    if (path.empty()) {
      std::cout << text << (text.ends_with('\n') ? "" : "\n");
      return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw lcc::Error("cannot write " + path);
    f << text << (text.ends_with('\n') ? "" : "\n");
  }
};

std::string report_table(const lcc::SolutionReport& r) {
  std::ostringstream out;
  out << "algorithm  " << r.algorithm << "\n"
      << "objective  " << lcc::to_string(r.objective) << "\n"
      << "cost       " << r.objective_value << "\n"
      << "swcost     " << r.swcost << " / " << r.budget << "\n"
      << "centers    " << r.clustering.centers.size() << " [";
  for (std::size_t i = 0; i < r.clustering.centers.size(); ++i) out << (i ? " " : "") << r.clustering.centers[i];
  out << "]\n";
  if (r.wall_time_ms) out << "time_ms    " << *r.wall_time_ms << "\n";
  return out.str();
}

struct InputArgs {
  std::string path;
  std::size_t csv_k = 1;

  void add(CLI::App* app) {
    app->add_option("--input", path, "Instance file (.json or .csv)")->required()->check(CLI::ExistingFile);
    app->add_option("--csv-k", csv_k, "Center count for CSV input");
  }
  lcc::ConsistentProblem load() const {
    lcc::LoadOptions opt;
    opt.csv_k = csv_k;
    return lcc::load_instance_file(path, opt);
  }
};

double ms_since(Clock::time_point t) { return std::chrono::duration<double, std::milli>(Clock::now() - t).count(); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Label-consistent k-center / k-median clustering"};
  app.require_subcommand(1);
  const std::uint64_t env_seed = default_seed();

  // gen
  auto* gen = app.add_subcommand("gen", "Generate instances");
  std::string gen_kind = "corpus";
  std::string gen_out;
  lcc::CorpusSpec spec;
  spec.seed = env_seed;
  std::string geometry = "euclidean";
  std::vector<std::size_t> budget_values{0, 1, 2};
  double budget_fraction = -1.0;
  std::size_t intro_budget = 1000;
  lcc::IntroCounts intro;
  gen->add_option("--kind", gen_kind, "corpus | intro")->check(CLI::IsMember({"corpus", "intro"}));
  gen->add_option("--out", gen_out, "Directory (corpus) or file (intro)")->required();
  gen->add_option("--count", spec.count);
  gen->add_option("--n-min", spec.n_min);
  gen->add_option("--n-max", spec.n_max);
  gen->add_option("--k-min", spec.k_min);
  gen->add_option("--k-max", spec.k_max);
  gen->add_option("--geometry", geometry)->check(CLI::IsMember({"euclidean", "random-metric"}));
  gen->add_option("--dim", spec.dimension);
  gen->add_option("--budget-values", budget_values, "Fixed budget choices")->delimiter(',');
  gen->add_option("--budget-fraction", budget_fraction, "S = floor(fraction * |P1|)");
  gen->add_option("--seed", spec.seed);
  gen->add_option("--intro-budget", intro_budget);
  gen->add_option("--intro-middle", intro.middle);
  gen->add_option("--intro-added", intro.added);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Run algorithms over a corpus or an insertion chain");
  std::string corpus_dir;
  std::string algorithms = "kcenter,kmedian-dp";
  lcc::SweepOptions sweep_opt;
  sweep_opt.seed = env_seed;
  bool no_oracle = false;
  bool chain = false;
  std::size_t chain_initial = 20, chain_step = 10, chain_steps = 5, chain_k = 3, chain_dim = 2;
  double chain_fraction = 0.1;
  Output sweep_out;
  sweep->add_option("--corpus", corpus_dir, "Directory of instance files");
  sweep->add_option("--algorithms", algorithms, "Comma-separated algorithm list");
  sweep->add_flag("--no-oracle", no_oracle);
  sweep->add_option("--seed", sweep_opt.seed);
  sweep->add_option("--jobs", sweep_opt.jobs);
  sweep->add_option("--eps", sweep_opt.epsilon);
  sweep->add_option("--reps", sweep_opt.repetitions);
  sweep->add_flag("--timing", sweep_opt.timing);
  sweep->add_flag("--chain", chain, "Run an insertion chain instead of a corpus");
  sweep->add_option("--chain-initial", chain_initial);
  sweep->add_option("--chain-step", chain_step);
  sweep->add_option("--chain-steps", chain_steps);
  sweep->add_option("--chain-k", chain_k);
  sweep->add_option("--chain-dim", chain_dim);
  sweep->add_option("--chain-fraction", chain_fraction);
  sweep_out.add(sweep);

  // kcenter
  auto* kc = app.add_subcommand("kcenter", "Label-consistent k-center");
  InputArgs kc_in;
  bool linear_scan = false;
  double radius = -1.0;
  bool kc_timing = false;
  Output kc_out;
  kc_in.add(kc);
  kc->add_flag("--linear-scan", linear_scan);
  kc->add_option("--radius", radius, "Run a single radius guess");
  kc->add_flag("--timing", kc_timing);
  kc_out.add(kc);

  // kmedian-dp
  auto* dp = app.add_subcommand("kmedian-dp", "Reduction + tree embedding + tree DP");
  InputArgs dp_in;
  std::uint64_t dp_seed = env_seed;
  lcc::PipelineOptions dp_opt;
  Output dp_out;
  dp_in.add(dp);
  dp->add_option("--seed", dp_seed);
  dp->add_option("--reps", dp_opt.repetitions, "Repetitions (0 = ceil(10 log2 n))");
  dp->add_flag("--exact", dp_opt.exact, "Use the exact tree DP");
  dp->add_option("--exact-budget", dp_opt.exact_cell_budget, "Cell limit for --exact");
  dp->add_flag("--charge-new-leaves", dp_opt.rounded.charge_new_leaves,
               "Count an opened new representative's weight as switching");
  dp->add_option("--jobs", dp_opt.jobs);
  dp->add_flag("--timing", dp_opt.timing);
  dp_out.add(dp);

  // kmedian-lp
  auto* lpc = app.add_subcommand("kmedian-lp", "LP relaxation and rounding");
  InputArgs lp_in;
  std::uint64_t lp_seed = env_seed;
  std::string mode = "k-plus-one";
  lcc::RoundingOptions lp_opt;
  bool lp_timing = false;
  Output lp_out;
  lp_in.add(lpc);
  lpc->add_option("--seed", lp_seed);
  lpc->add_option("--mode", mode)->check(CLI::IsMember({"k-plus-one", "eps-switch"}));
  lpc->add_option("--eps", lp_opt.epsilon);
  lpc->add_option("--samples", lp_opt.samples);
  lpc->add_flag("--timing", lp_timing);
  lp_out.add(lpc);

  // oracle
  auto* orc = app.add_subcommand("oracle", "Brute-force optimum (n <= 14, k <= 4)");
  InputArgs or_in;
  std::string objective = "kmedian";
  Output or_out;
  or_in.add(orc);
  orc->add_option("--objective", objective)->check(CLI::IsMember({"kcenter", "kmedian"}));
  or_out.add(orc);

  // gap-demo
  auto* gap = app.add_subcommand("gap-demo", "Integrality gap instance");
  std::size_t gap_k = 3, gap_m = 2;
  double gap_d = 100.0;
  Output gap_out;
  gap->add_option("--k", gap_k);
  gap->add_option("--m", gap_m);
  gap->add_option("--d", gap_d);
  gap_out.add(gap);

  // embed-dump
  auto* emb = app.add_subcommand("embed-dump", "Reduce and embed, print the tree");
  InputArgs emb_in;
  std::uint64_t emb_seed = env_seed;
  Output emb_out;
  emb_in.add(emb);
  emb->add_option("--seed", emb_seed);
  emb_out.add(emb);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      if (gen_kind == "intro") {
        lcc::save_instance_file(lcc::intro_instance(intro, intro_budget), gen_out);
        return 0;
      }
      spec.geometry = geometry == "euclidean" ? lcc::Geometry::kEuclidean : lcc::Geometry::kRandomMetric;
      if (budget_fraction >= 0.0) {
        spec.budget_policy = lcc::BudgetPolicy::kFraction;
        spec.budget_fraction = budget_fraction;
      } else {
        spec.budget_values = budget_values;
      }
      const auto paths = lcc::write_corpus(lcc::generate_corpus(spec), gen_out);
      std::cout << "wrote " << paths.size() << " instances to " << gen_out << "\n";
      return 0;
    }
    if (*sweep) {
      sweep_opt.algorithms.clear();
      std::stringstream ss(algorithms);
      for (std::string a; std::getline(ss, a, ',');)
        if (!a.empty()) sweep_opt.algorithms.push_back(a);
      if (chain) {
        const lcc::Chain c = lcc::incremental_chain(chain_initial, chain_step, chain_steps, chain_dim, sweep_opt.seed);
        nlohmann::ordered_json all = nlohmann::ordered_json::array();
        std::ostringstream table;
        for (const auto& a : sweep_opt.algorithms) {
          const lcc::ChainReport r = lcc::run_chain(c, chain_k, chain_fraction, a, sweep_opt.seed);
          all.push_back(nlohmann::ordered_json::parse(lcc::chain_to_json(r)));
          table << a << ": total swcost " << r.total_swcost << " / budget " << r.total_budget << "\n";
          if (r.total_swcost > r.total_budget) throw lcc::StructuralError("chain exceeded its cumulative budget");
        }
        sweep_out.emit(all.dump(2), table.str());
        return 0;
      }
      if (corpus_dir.empty()) throw lcc::ValidationError("sweep needs --corpus or --chain");
      sweep_opt.with_oracle = !no_oracle;
      const lcc::SweepReport r = lcc::run_sweep(lcc::load_corpus(corpus_dir), sweep_opt);
      sweep_out.emit(lcc::sweep_to_json(r), lcc::sweep_to_table(r));
      return 0;
    }
    if (*kc) {
      const auto problem = kc_in.load();
      const auto start = Clock::now();
      lcc::kcenter::Options opt;
      opt.linear_scan = linear_scan;
      auto out = radius >= 0.0 ? lcc::kcenter::solve_at(problem, radius) : lcc::kcenter::solve(problem, opt);
      if (!out.report) {
        std::cerr << "no feasible radius\n";
        return 2;
      }
      if (kc_timing) out.report->wall_time_ms = ms_since(start);
      kc_out.emit(lcc::report_to_json(*out.report), report_table(*out.report));
      return 0;
    }
    if (*dp) {
      const auto problem = dp_in.load();
      const auto out = lcc::solve_pipeline(problem, dp_seed, dp_opt);
      dp_out.emit(lcc::report_to_json(out.report), report_table(out.report));
      return 0;
    }
    if (*lpc) {
      const auto problem = lp_in.load();
      lp_opt.mode = mode == "k-plus-one" ? lcc::RoundingMode::kAugmentCenter : lcc::RoundingMode::kAugmentSwitch;
      const auto start = Clock::now();
      auto r = lcc::round_solution(problem, lp_seed, lp_opt);
      if (lp_timing) r.wall_time_ms = ms_since(start);
      lp_out.emit(lcc::report_to_json(r), report_table(r));
      return 0;
    }
    if (*orc) {
      const auto problem = or_in.load();
      const auto obj = objective == "kcenter" ? lcc::Objective::kCenter : lcc::Objective::kMedian;
      const auto res = lcc::brute_force(problem, obj);
      auto r = lcc::make_report(problem, res.opt_clustering, obj, "oracle", problem.k());
      r.meta["enumerated"] = static_cast<std::int64_t>(res.enumerated);
      or_out.emit(lcc::report_to_json(r), report_table(r));
      return 0;
    }
    if (*gap) {
      const auto demo = lcc::run_gap_demo(gap_k, gap_m, gap_d);
      std::ostringstream t;
      t << "lp " << demo.lp_value << "  integral " << demo.integral_opt << "  ratio " << demo.ratio
        << "  witness switching " << demo.analysis.witness_switching.str() << "\n";
      gap_out.emit(lcc::gap_demo_to_json(demo), t.str());
      return 0;
    }
    if (*emb) {
      const auto problem = emb_in.load();
      const auto w = lcc::reduce_points(problem, lcc::child_seed(emb_seed, 0));
      const auto tree = lcc::embed(w, problem.metric(), lcc::child_seed(emb_seed, 1));
      std::ostringstream t;
      t << "representatives " << w.size() << "  nodes " << tree.nodes().size() << "  depth " << tree.depth() << "\n";
      emb_out.emit(lcc::tree_to_json(tree, w), t.str());
      return 0;
    }
  } catch (const lcc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
