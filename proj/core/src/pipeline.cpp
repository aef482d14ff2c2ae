#include "lcc/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "lcc/error.hpp"
#include "lcc/rng.hpp"
#include "lcc/tree_embedding.hpp"

namespace lcc {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct Run {
  RepetitionRecord record;
  Clustering clustering;
};

Run run_once(const ConsistentProblem& problem, std::uint64_t seed, const PipelineOptions& options) {
  Run run;
  run.record.seed = seed;
  auto t0 = Clock::now();
  const WeightedInstance weighted = reduce_points(problem, child_seed(seed, 0), options.seeding_multiplier);
  run.record.reduce_ms = ms_since(t0);
  t0 = Clock::now();
  const TreeEmbedding tree = embed(weighted, problem.metric(), child_seed(seed, 1));
  run.record.embed_ms = ms_since(t0);
  t0 = Clock::now();
  TreeSolution sol;
  if (options.exact) {
    const std::size_t cells = exact_dp_cells(tree, problem.k(), std::min(problem.budget(), weighted.old_weight()));
    if (cells > options.exact_cell_budget) throw GuardError("exact DP table exceeds the configured budget");
    sol = exact_tree_dp(tree, weighted, problem.k(), problem.budget());
  } else {
    sol = rounded_tree_dp(tree, weighted, problem.k(), problem.budget(), options.rounded);
  }
  run.record.dp_ms = ms_since(t0);
  run.clustering = lift(weighted, sol, problem.size());
  run.record.reps = weighted.size();
  run.record.depth = tree.depth();
  run.record.moving_cost = moving_cost(problem, weighted);
  run.record.tree_cost = sol.tree_cost;
  run.record.cost = cost_kmedian(problem, run.clustering);
  run.record.swcost = swcost(problem, run.clustering);
  if (run.record.swcost > problem.budget()) throw StructuralError("lifted solution exceeds the switching budget");
  const double bound = run.record.moving_cost + run.record.tree_cost;
  if (run.record.cost > bound * (1.0 + 1e-12) + 1e-12)
    throw StructuralError("lifted cost exceeds moving cost plus tree cost");
  return run;
}

}  // namespace

std::size_t default_repetitions(std::size_t n) {
  if (n < 2) return 1;
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(10.0 * std::log2(static_cast<double>(n)))));
}

Clustering lift(const WeightedInstance& weighted, const TreeSolution& solution, std::size_t n) {
  Clustering c;
  for (std::size_t r : solution.open) c.centers.push_back(weighted.reps[r].point);
  std::sort(c.centers.begin(), c.centers.end());
  c.assign.resize(n);
  for (Index p = 0; p < n; ++p) c.assign[p] = weighted.reps[solution.center_of[weighted.rep_of[p]]].point;
  return c;
}

PipelineOutcome solve_pipeline(const ConsistentProblem& problem, std::uint64_t seed,
                               const PipelineOptions& options) {
  const std::size_t reps = options.repetitions == 0 ? default_repetitions(problem.size()) : options.repetitions;
  const auto start = Clock::now();
  std::vector<Run> runs(reps);
  const std::size_t jobs = std::clamp<std::size_t>(options.jobs, 1, reps);
  if (jobs == 1) {
    for (std::size_t r = 0; r < reps; ++r) runs[r] = run_once(problem, child_seed(seed, r), options);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> workers;
    for (std::size_t w = 0; w < jobs; ++w) {
      workers.emplace_back([&] {
        for (std::size_t r = next++; r < reps; r = next++) {
          try {
            runs[r] = run_once(problem, child_seed(seed, r), options);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
    for (auto& t : workers) t.join();
    if (failure) std::rethrow_exception(failure);
  }

  PipelineOutcome out;
  for (std::size_t r = 1; r < reps; ++r)
    if (runs[r].record.cost < runs[out.best].record.cost) out.best = r;
  for (const Run& run : runs) out.runs.push_back(run.record);
  const RepetitionRecord& best = out.runs[out.best];
  out.report = make_report(problem, std::move(runs[out.best].clustering), Objective::kMedian,
                           options.exact ? "kmedian-dp-exact" : "kmedian-dp", problem.k());
  out.report.meta["seed"] = static_cast<std::int64_t>(seed);
  out.report.meta["repetitions"] = static_cast<std::int64_t>(reps);
  out.report.meta["best_repetition"] = static_cast<std::int64_t>(out.best);
  out.report.meta["representatives"] = static_cast<std::int64_t>(best.reps);
  out.report.meta["tree_depth"] = static_cast<std::int64_t>(best.depth);
  out.report.meta["moving_cost"] = best.moving_cost;
  out.report.meta["tree_cost"] = best.tree_cost;
  if (options.rounded.charge_new_leaves) out.report.meta["charge_new_leaves"] = true;
  if (options.timing) {
    double reduce = 0, emb = 0, dp = 0;
    for (const auto& r : out.runs) {
      reduce += r.reduce_ms;
      emb += r.embed_ms;
      dp += r.dp_ms;
    }
    out.report.meta["reduce_ms"] = reduce;
    out.report.meta["embed_ms"] = emb;
    out.report.meta["dp_ms"] = dp;
    out.report.wall_time_ms = ms_since(start);
  }
  return out;
}

}  // namespace lcc
