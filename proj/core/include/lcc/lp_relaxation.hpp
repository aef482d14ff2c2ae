#pragma once

#include <optional>
#include <vector>

#include "lcc/problem.hpp"

namespace lcc {

/// Optimal point of the k-median LP with the switching-budget row.
/// Facilities and clients are both the points of P2.
struct FractionalSolution {
  std::size_t n = 0;
  std::vector<double> y;
  /// x[i * n + j]: fraction of client j served by facility i.
  std::vector<double> x;
  double objective = 0.0;
  std::size_t iterations = 0;

  double assign(Index facility, Index client) const { return x[facility * n + client]; }
};

/// Facility openings pinned by the caller (heavy-center guessing).
using FixedOpenings = std::vector<std::optional<double>>;

/// Solves the relaxation. Returns nullopt if the pinned openings make it
/// infeasible; throws SolverError on solver failure.
std::optional<FractionalSolution> solve_lp(const ConsistentProblem& problem, const FixedOpenings& fixed);

/// Unpinned relaxation; always feasible for a valid problem.
FractionalSolution solve_lp(const ConsistentProblem& problem);

/// d_av(j) = sum_i x_ij d(i, j) for every client.
std::vector<double> average_distances(const ConsistentProblem& problem, const FractionalSolution& frac);

/// Fractional switching sum_{i in C1} (1 - y_i) w_i.
double fractional_switching(const ConsistentProblem& problem, const std::vector<double>& y);

}  // namespace lcc
