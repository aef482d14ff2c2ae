#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lcc/corpus.hpp"
#include "lcc/report.hpp"

namespace lcc {

/// git describe of the library build.
const char* build_describe() noexcept;

inline constexpr int kSweepSchemaVersion = 1;

/// Algorithm names: "kcenter", "kmedian-dp", "kmedian-lp:k+1", "kmedian-lp:eps".
bool is_known_algorithm(const std::string& name);

/// Runs one named algorithm with the sweep's conventions.
SolutionReport run_algorithm(const ConsistentProblem& problem, const std::string& algorithm, std::uint64_t seed,
                             double epsilon = 0.5, std::size_t repetitions = 0);

/// Switching allowance of an algorithm on a problem (S, or (1 + eps) S).
double switching_allowance(const std::string& algorithm, std::size_t budget, double epsilon);

struct SweepOptions {
  std::vector<std::string> algorithms{"kcenter", "kmedian-dp"};
  bool with_oracle = true;
  std::uint64_t seed = 1;
  std::size_t jobs = 1;
  double epsilon = 0.5;
  std::size_t repetitions = 0;
  bool timing = false;
};

struct SweepRow {
  std::string instance;
  std::string algorithm;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t budget = 0;
  double prior_cost = 0.0;
  std::optional<double> cost;
  std::optional<std::size_t> swcost;
  std::optional<std::size_t> centers;
  std::optional<double> oracle_opt;
  /// cost / OPT.
  std::optional<double> ratio;
  /// cost / (OPT + prior cost), k-median only.
  std::optional<double> envelope;
  std::optional<double> time_ms;
  std::string error;
};

struct SweepAggregate {
  std::string algorithm;
  std::size_t runs = 0;
  std::size_t failures = 0;
  std::optional<double> ratio_p50, ratio_p90, ratio_max;
  std::optional<double> envelope_p50, envelope_p90, envelope_max;
};

struct SweepReport {
  std::string git_describe;
  SweepOptions options;
  std::vector<SweepRow> rows;
  std::vector<SweepAggregate> aggregates;
};

/// Runs every algorithm on every instance. Solver failures are recorded per
/// row; a switching-allowance violation aborts with StructuralError.
SweepReport run_sweep(const std::vector<std::pair<std::string, ConsistentProblem>>& instances,
                      const SweepOptions& options);

std::string sweep_to_json(const SweepReport& report, int indent = 2);
std::string sweep_to_table(const SweepReport& report);

/// Nearest-rank percentile of a nonempty sample, q in [0, 1].
double percentile(std::vector<double> values, double q);

struct ChainStep {
  std::size_t n = 0;
  std::size_t budget = 0;
  std::size_t swcost = 0;
  double cost = 0.0;
};

struct ChainReport {
  std::string algorithm;
  std::vector<ChainStep> steps;
  std::size_t total_swcost = 0;
  std::size_t total_budget = 0;
};

/// Solves each prefix of the chain with the previous solution as the prior;
/// step t gets budget floor(fraction * |P_{t-1}|).
ChainReport run_chain(const Chain& chain, std::size_t k, double budget_fraction, const std::string& algorithm,
                      std::uint64_t seed);

std::string chain_to_json(const ChainReport& report, int indent = 2);

}  // namespace lcc
