#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lcc/report.hpp"

namespace lcc::kcenter {

enum class AttemptStatus {
  kFeasible,
  kTooManyNewCenters,  // phase 1 opened more than k centers
  kTooManyCenters,     // phase 1 plus the temporary old centers exceed k
  kOverBudget,         // switching cost of the resulting clustering exceeds S
};

const char* to_string(AttemptStatus status) noexcept;

/// One run of the two-phase procedure at a fixed radius guess R.
struct RadiusAttempt {
  double radius = 0.0;
  /// Points left uncovered by the 2R-balls around old centers.
  std::vector<Index> initially_uncovered;
  /// Phase-1 centers, in opening order (pairwise more than 2R apart).
  std::vector<Index> new_centers;
  /// |Fol1(c, 2R)| per old center, aligned with problem.prior().centers.
  std::vector<std::size_t> follower_weight;
  /// Old centers marked as temporary representatives, in processing order.
  std::vector<Index> temporary;
  /// For each temporary center, the heaviest old center within R that replaced it.
  std::vector<Index> replacement;
  /// Final clustering; empty when phase 1/phase 2 already exceed k centers.
  std::optional<Clustering> clustering;
  /// Direct switching count of `clustering`.
  std::size_t swcost = 0;
  /// |P1| - sum of follower weights over retained old centers.
  std::size_t weight_switch_bound = 0;
  AttemptStatus status = AttemptStatus::kFeasible;

  bool feasible() const noexcept { return status == AttemptStatus::kFeasible; }
};

RadiusAttempt solve_for_radius(const ConsistentProblem& problem, double radius);

/// Sorted distinct pairwise distances of P2, including 0.
std::vector<double> candidate_radii(const ConsistentProblem& problem);

struct Options {
  /// Test every candidate radius instead of binary searching.
  bool linear_scan = false;
};

struct Outcome {
  /// Empty when no candidate radius is feasible.
  std::optional<SolutionReport> report;
  std::optional<double> radius;
  std::size_t attempts = 0;
};

/// Smallest feasible candidate radius found by binary search (or a linear
/// scan); the result carries a 6-approximate clustering within budget.
Outcome solve(const ConsistentProblem& problem, const Options& options = {});

/// Report for a fixed radius (used by the CLI's --radius switch).
Outcome solve_at(const ConsistentProblem& problem, double radius);

}  // namespace lcc::kcenter
