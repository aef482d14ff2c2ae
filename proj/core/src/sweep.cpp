#include "lcc/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "lcc/error.hpp"
#include "lcc/kcenter.hpp"
#include "lcc/lp_rounding.hpp"
#include "lcc/oracle.hpp"
#include "lcc/pipeline.hpp"
#include "lcc/rng.hpp"
#include "json.hpp"

#ifndef LCC_GIT_DESCRIBE
#define LCC_GIT_DESCRIBE "unknown"
#endif

namespace lcc {

const char* build_describe() noexcept { return LCC_GIT_DESCRIBE; }

bool is_known_algorithm(const std::string& name) {
  return name == "kcenter" || name == "kmedian-dp" || name == "kmedian-lp:k+1" || name == "kmedian-lp:eps";
}

SolutionReport run_algorithm(const ConsistentProblem& problem, const std::string& algorithm, std::uint64_t seed,
                             double epsilon, std::size_t repetitions) {
  if (algorithm == "kcenter") {
    auto out = kcenter::solve(problem);
    if (!out.report) throw SolverError("no feasible radius");
    return std::move(*out.report);
  }
  if (algorithm == "kmedian-dp") {
    PipelineOptions opt;
    opt.repetitions = repetitions;
    return solve_pipeline(problem, seed, opt).report;
  }
  if (algorithm == "kmedian-lp:k+1" || algorithm == "kmedian-lp:eps") {
    RoundingOptions opt;
    opt.mode = algorithm == "kmedian-lp:k+1" ? RoundingMode::kAugmentCenter : RoundingMode::kAugmentSwitch;
    opt.epsilon = epsilon;
    return round_solution(problem, seed, opt);
  }
  throw ValidationError("unknown algorithm: " + algorithm);
}

double switching_allowance(const std::string& algorithm, std::size_t budget, double epsilon) {
  const double s = static_cast<double>(budget);
  return algorithm == "kmedian-lp:eps" ? (1.0 + epsilon) * s : s;
}

double percentile(std::vector<double> values, double q) {
  if (values.empty()) throw ValidationError("percentile of an empty sample");
  std::sort(values.begin(), values.end());
  const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(values.size())));
  return values[std::clamp<std::size_t>(rank, 1, values.size()) - 1];
}

namespace {

using Clock = std::chrono::steady_clock;

struct InstanceRows {
  std::vector<SweepRow> rows;
  std::string violation;
};

InstanceRows sweep_instance(const std::string& name, const ConsistentProblem& problem, std::uint64_t seed,
                            const SweepOptions& options) {
  InstanceRows out;
  std::optional<double> opt_center, opt_median;
  const bool small = problem.size() <= kOracleMaxPoints && problem.k() <= kOracleMaxCenters;
  for (const std::string& algorithm : options.algorithms) {
    SweepRow row;
    row.instance = name;
    row.algorithm = algorithm;
    row.seed = seed;
    row.n = problem.size();
    row.k = problem.k();
    row.budget = problem.budget();
    row.prior_cost = problem.prior_cost();
    const bool median = algorithm != "kcenter";
    try {
      const auto start = Clock::now();
      SolutionReport r = run_algorithm(problem, algorithm, seed, options.epsilon, options.repetitions);
      if (options.timing) row.time_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
      row.cost = r.objective_value;
      row.swcost = r.swcost;
      row.centers = r.clustering.centers.size();
      if (static_cast<double>(r.swcost) > switching_allowance(algorithm, problem.budget(), options.epsilon) + 1e-9) {
        out.violation = name + ": " + algorithm + " switched " + std::to_string(r.swcost) + " points with budget " +
                        std::to_string(problem.budget());
        out.rows.push_back(std::move(row));
        return out;
      }
      if (options.with_oracle && small) {
        auto& slot = median ? opt_median : opt_center;
        if (!slot) slot = brute_force(problem, median ? Objective::kMedian : Objective::kCenter).opt_value;
        row.oracle_opt = *slot;
        if (*slot > 0.0) row.ratio = *row.cost / *slot;
        else if (*row.cost == 0.0) row.ratio = 1.0;
        if (median && *slot + row.prior_cost > 0.0) row.envelope = *row.cost / (*slot + row.prior_cost);
      }
    } catch (const StructuralError&) {
      throw;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace

SweepReport run_sweep(const std::vector<std::pair<std::string, ConsistentProblem>>& instances,
                      const SweepOptions& options) {
  for (const auto& a : options.algorithms)
    if (!is_known_algorithm(a)) throw ValidationError("unknown algorithm: " + a);
  SweepReport report;
  report.git_describe = build_describe();
  report.options = options;
  std::vector<InstanceRows> results(instances.size());
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&](std::size_t i) {
    try {
      results[i] = sweep_instance(instances[i].first, instances[i].second, child_seed(options.seed, i), options);
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };
  const std::size_t jobs = std::clamp<std::size_t>(options.jobs, 1, std::max<std::size_t>(1, instances.size()));
  if (jobs == 1) {
    for (std::size_t i = 0; i < instances.size(); ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < jobs; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < instances.size(); i = next++) work(i);
      });
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  for (auto& r : results) {
    if (!r.violation.empty()) throw StructuralError("budget violation, sweep aborted: " + r.violation);
    for (auto& row : r.rows) report.rows.push_back(std::move(row));
  }
  for (const std::string& algorithm : options.algorithms) {
    SweepAggregate agg;
    agg.algorithm = algorithm;
    std::vector<double> ratios, envelopes;
    for (const SweepRow& row : report.rows) {
      if (row.algorithm != algorithm) continue;
      ++agg.runs;
      if (!row.error.empty()) ++agg.failures;
      if (row.ratio) ratios.push_back(*row.ratio);
      if (row.envelope) envelopes.push_back(*row.envelope);
    }
    if (!ratios.empty()) {
      agg.ratio_p50 = percentile(ratios, 0.5);
      agg.ratio_p90 = percentile(ratios, 0.9);
      agg.ratio_max = percentile(ratios, 1.0);
    }
    if (!envelopes.empty()) {
      agg.envelope_p50 = percentile(envelopes, 0.5);
      agg.envelope_p90 = percentile(envelopes, 0.9);
      agg.envelope_max = percentile(envelopes, 1.0);
    }
    report.aggregates.push_back(std::move(agg));
  }
  return report;
}

namespace {

template <typename T>
void put(nlohmann::ordered_json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
  else j[key] = nullptr;
}

}  // namespace

std::string sweep_to_json(const SweepReport& report, int indent) {
  nlohmann::ordered_json j;
  j["schema_version"] = kSweepSchemaVersion;
  j["git_describe"] = report.git_describe;
  j["seed"] = report.options.seed;
  j["algorithms"] = report.options.algorithms;
  j["with_oracle"] = report.options.with_oracle;
  j["epsilon"] = report.options.epsilon;
  j["repetitions"] = report.options.repetitions;
  auto rows = nlohmann::ordered_json::array();
  for (const SweepRow& r : report.rows) {
    nlohmann::ordered_json e;
    e["instance"] = r.instance;
    e["algorithm"] = r.algorithm;
    e["seed"] = r.seed;
    e["n"] = r.n;
    e["k"] = r.k;
    e["budget"] = r.budget;
    e["prior_cost"] = r.prior_cost;
    put(e, "cost", r.cost);
    put(e, "swcost", r.swcost);
    put(e, "centers", r.centers);
    put(e, "oracle_opt", r.oracle_opt);
    put(e, "ratio", r.ratio);
    put(e, "envelope", r.envelope);
    if (r.time_ms) e["time_ms"] = *r.time_ms;
    if (!r.error.empty()) e["error"] = r.error;
    rows.push_back(std::move(e));
  }
  j["rows"] = std::move(rows);
  auto aggs = nlohmann::ordered_json::array();
  for (const SweepAggregate& a : report.aggregates) {
    nlohmann::ordered_json e;
    e["algorithm"] = a.algorithm;
    e["runs"] = a.runs;
    e["failures"] = a.failures;
    put(e, "ratio_p50", a.ratio_p50);
    put(e, "ratio_p90", a.ratio_p90);
    put(e, "ratio_max", a.ratio_max);
    put(e, "envelope_p50", a.envelope_p50);
    put(e, "envelope_p90", a.envelope_p90);
    put(e, "envelope_max", a.envelope_max);
    aggs.push_back(std::move(e));
  }
  j["aggregates"] = std::move(aggs);
  return j.dump(indent);
}

std::string sweep_to_table(const SweepReport& report) {
  std::ostringstream out;
  auto num = [](const std::optional<double>& v) {
    if (!v) return std::string("-");
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", *v);
    return std::string(buf);
  };
  char line[256];
  std::snprintf(line, sizeof line, "%-18s %6s %6s %10s %10s %10s %10s %10s\n", "algorithm", "runs", "fail",
                "ratio_p50", "ratio_p90", "ratio_max", "env_p90", "env_max");
  out << line;
  for (const SweepAggregate& a : report.aggregates) {
    std::snprintf(line, sizeof line, "%-18s %6zu %6zu %10s %10s %10s %10s %10s\n", a.algorithm.c_str(), a.runs,
                  a.failures, num(a.ratio_p50).c_str(), num(a.ratio_p90).c_str(), num(a.ratio_max).c_str(),
                  num(a.envelope_p90).c_str(), num(a.envelope_max).c_str());
    out << line;
  }
  return out.str();
}

ChainReport run_chain(const Chain& chain, std::size_t k, double budget_fraction, const std::string& algorithm,
                      std::uint64_t seed) {
  if (!is_known_algorithm(algorithm)) throw ValidationError("unknown algorithm: " + algorithm);
  ChainReport out;
  out.algorithm = algorithm;
  Clustering previous;
  for (std::size_t t = 0; t < chain.sizes.size(); ++t) {
    const std::size_t n = chain.sizes[t];
    std::vector<std::vector<double>> pts(chain.points.begin(), chain.points.begin() + static_cast<std::ptrdiff_t>(n));
    Metric metric = Metric::euclidean(std::move(pts));
    std::vector<Index> p1;
    Clustering prior;
    prior.assign.assign(n, kUnassigned);
    std::size_t budget = 0;
    if (t > 0) {
      const std::size_t old = chain.sizes[t - 1];
      for (Index p = 0; p < old; ++p) p1.push_back(p);
      prior.centers = previous.centers;
      std::copy(previous.assign.begin(), previous.assign.end(), prior.assign.begin());
      budget = static_cast<std::size_t>(std::floor(budget_fraction * static_cast<double>(old)));
    }
    ConsistentProblem problem(std::move(metric), std::move(p1), std::move(prior), budget, k);
    SolutionReport r = run_algorithm(problem, algorithm, child_seed(seed, t));
    out.steps.push_back({n, budget, r.swcost, r.objective_value});
    out.total_swcost += r.swcost;
    out.total_budget += budget;
    previous = std::move(r.clustering);
    // Centers beyond k (the k+1 variant) cannot seed the next prior.
    if (previous.centers.size() > k) throw StructuralError("chain prior would exceed k centers");
  }
  return out;
}

std::string chain_to_json(const ChainReport& report, int indent) {
  nlohmann::ordered_json j;
  j["algorithm"] = report.algorithm;
  auto steps = nlohmann::ordered_json::array();
  for (const ChainStep& s : report.steps)
    steps.push_back({{"n", s.n}, {"budget", s.budget}, {"swcost", s.swcost}, {"cost", s.cost}});
  j["steps"] = std::move(steps);
  j["total_swcost"] = report.total_swcost;
  j["total_budget"] = report.total_budget;
  return j.dump(indent);
}

}  // namespace lcc
