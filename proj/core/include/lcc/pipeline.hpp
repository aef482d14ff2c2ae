#pragma once

#include <cstdint>
#include <vector>

#include "lcc/reduction.hpp"
#include "lcc/report.hpp"
#include "lcc/tree_dp.hpp"

namespace lcc {

struct PipelineOptions {
  /// 0 selects max(1, ceil(10 * log2 n)).
  std::size_t repetitions = 0;
  double seeding_multiplier = kDefaultSeedingMultiplier;
  /// Use the exact DP; guarded by exact_cell_budget.
  bool exact = false;
  std::size_t exact_cell_budget = 50'000'000;
  RoundedDpOptions rounded;
  /// Worker threads for the repetitions.
  std::size_t jobs = 1;
  /// Record per-phase wall clock in the outcome and the report.
  bool timing = false;
};

struct RepetitionRecord {
  std::uint64_t seed = 0;
  std::size_t reps = 0;
  int depth = 0;
  double moving_cost = 0.0;
  double tree_cost = 0.0;
  double cost = 0.0;
  std::size_t swcost = 0;
  double reduce_ms = 0.0;
  double embed_ms = 0.0;
  double dp_ms = 0.0;
};

struct PipelineOutcome {
  SolutionReport report;
  std::vector<RepetitionRecord> runs;
  std::size_t best = 0;
};

std::size_t default_repetitions(std::size_t n);

/// The representative clustering mapped back to P2: opened representatives
/// become the centers and every point follows its representative.
Clustering lift(const WeightedInstance& weighted, const TreeSolution& solution, std::size_t n);

/// Reduce, embed, solve on the tree and lift, once per child seed; keeps the
/// cheapest repetition (ties to the earliest). Throws StructuralError if a
/// lifted solution exceeds the budget or breaks the cost decomposition
/// cost <= moving cost + tree cost.
PipelineOutcome solve_pipeline(const ConsistentProblem& problem, std::uint64_t seed,
                               const PipelineOptions& options = {});

}  // namespace lcc
