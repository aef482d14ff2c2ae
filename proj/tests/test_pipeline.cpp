#include <cmath>

#include "doctest.h"
#include "lcc/error.hpp"
#include "lcc/oracle.hpp"
#include "lcc/pipeline.hpp"
#include "support.hpp"

using namespace lcc;
using namespace lcc::testing;

TEST_CASE("default repetition count") {
  CHECK(default_repetitions(1) == 1);
  CHECK(default_repetitions(2) == 10);
  CHECK(default_repetitions(12) == 36);
}

TEST_CASE("pipeline runs respect the budget and the cost decomposition") {
  for (const auto& p : oracle_corpus(40, 61)) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const auto out = solve_pipeline(p, seed);
      verify_report(p, out.report);
      CHECK(out.report.swcost <= p.budget());
      CHECK(out.report.clustering.centers.size() <= p.k());
      CHECK(out.runs.size() == default_repetitions(p.size()));
      for (const auto& run : out.runs) {
        CHECK(run.swcost <= p.budget());
        CHECK(run.cost <= run.moving_cost + run.tree_cost + 1e-9);
        CHECK(run.cost >= out.report.objective_value);
      }
      CHECK(out.runs[out.best].cost == out.report.objective_value);
    }
  }
}

TEST_CASE("pipeline quality envelope against the oracle") {
  double worst = 0.0;
  for (const auto& p : oracle_corpus(60, 62)) {
    const double opt = brute_force(p, Objective::kMedian).opt_value;
    const double cost = solve_pipeline(p, 1).report.objective_value;
    const double base = opt + p.prior_cost();
    if (base == 0.0) {
      CHECK(cost == 0.0);
      continue;
    }
    const double ratio = cost / base;
    worst = std::max(worst, ratio);
    CHECK(ratio <= 8.0 * (1.0 + std::log(static_cast<double>(p.k()))));
  }
  MESSAGE("worst cost / (OPT + prior): " << worst);
}

TEST_CASE("exact and rounded tree solvers agree closely") {
  PipelineOptions exact;
  exact.exact = true;
  exact.repetitions = 5;
  PipelineOptions rounded;
  rounded.repetitions = 5;
  for (const auto& p : oracle_corpus(30, 63)) {
    const auto a = solve_pipeline(p, 2, exact);
    const auto b = solve_pipeline(p, 2, rounded);
    CHECK(a.report.algorithm == "kmedian-dp-exact");
    CHECK(b.report.algorithm == "kmedian-dp");
    for (std::size_t r = 0; r < 5; ++r) {
      CHECK(a.runs[r].moving_cost == b.runs[r].moving_cost);
      CHECK(a.runs[r].tree_cost <= b.runs[r].tree_cost + 1e-9);
      CHECK(b.runs[r].tree_cost <= 1.01 * a.runs[r].tree_cost + 1e-9);
    }
  }
  exact.exact_cell_budget = 1;
  CHECK_THROWS_AS(solve_pipeline(oracle_corpus(1, 1).front(), 1, exact), GuardError);
}

TEST_CASE("prior solution is kept when nothing is new") {
  const Metric m = line_metric({0, 1, 2, 10, 11});
  Clustering prior{{1, 3}, {1, 1, 1, 3, 3}};
  const ConsistentProblem p(m, {0, 1, 2, 3, 4}, prior, 0, 2);
  const auto out = solve_pipeline(p, 4);
  CHECK(out.report.swcost == 0);
  CHECK(out.report.objective_value == 3.0);
  CHECK(out.report.clustering.centers == std::vector<Index>{1, 3});
}

TEST_CASE("motivating instance with two centers") {
  PipelineOptions opts;
  opts.repetitions = 3;
  const auto frozen = solve_pipeline(intro_instance(IntroCounts{}, 0), 1, opts).report;
  CHECK(frozen.swcost == 0);
  CHECK(frozen.clustering.centers == std::vector<Index>{10, 1020});
  for (std::size_t budget : {1, 5, 20}) {
    const auto out = solve_pipeline(intro_instance(IntroCounts{}, budget), 1, opts).report;
    CHECK(out.swcost <= budget);
    CHECK(out.clustering.centers.size() <= 2);
    // Giving up the lone far center is worth it once the budget allows it.
    CHECK(out.objective_value < frozen.objective_value);
  }
}

TEST_CASE("pipeline is deterministic and independent of the worker count") {
  const auto p = oracle_corpus(4, 64).back();
  PipelineOptions one;
  PipelineOptions four;
  four.jobs = 4;
  const auto a = solve_pipeline(p, 9, one);
  const auto b = solve_pipeline(p, 9, four);
  CHECK(report_to_json(a.report) == report_to_json(b.report));
  CHECK(report_to_json(a.report) == report_to_json(solve_pipeline(p, 9, one).report));
  CHECK(!a.report.wall_time_ms);
}

TEST_CASE("lifting maps points through their representatives") {
  WeightedInstance w;
  w.reps = {{2, 2, RepKind::kOld}, {0, 1, RepKind::kNew}};
  w.rep_of = {1, 0, 0};
  TreeSolution sol;
  sol.open = {0};
  sol.center_of = {0, 0};
  const auto c = lift(w, sol, 3);
  CHECK(c.centers == std::vector<Index>{2});
  CHECK(c.assign == std::vector<Index>{2, 2, 2});
}
