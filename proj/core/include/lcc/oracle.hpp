#pragma once

#include <functional>

#include "lcc/reduction.hpp"
#include "lcc/report.hpp"
#include "lcc/tree_dp.hpp"
#include "lcc/tree_embedding.hpp"

namespace lcc {

struct OracleResult {
  double opt_value = 0.0;
  Clustering opt_clustering;
  /// Center sets examined.
  std::size_t enumerated = 0;
};

inline constexpr std::size_t kOracleMaxPoints = 14;
inline constexpr std::size_t kOracleMaxCenters = 4;

/// Exact optimum by enumerating every center set of size at most k (sizes
/// ascending, lexicographic within a size) with the budget-optimal
/// assignment for each. Throws GuardError beyond n = 14 or k = 4.
OracleResult brute_force(const ConsistentProblem& problem, Objective objective);

/// Budget-optimal k-median assignment for a fixed center set, or nullopt
/// when the forced switches alone exceed the budget.
std::optional<Clustering> best_kmedian_assignment(const ConsistentProblem& problem, const std::vector<Index>& centers);

/// Budget-optimal k-center assignment for a fixed center set.
std::optional<Clustering> best_kcenter_assignment(const ConsistentProblem& problem, const std::vector<Index>& centers);

/// Enumerates every center set and every point-to-center assignment
/// (n <= 8, k <= 3). Slow and independent of the savings argument.
OracleResult brute_force_assignments(const ConsistentProblem& problem, Objective objective);

/// Exact optimum over representatives under an arbitrary distance:
/// every representative set of size at most k, each other
/// representative at its closest open one. Old representatives that are
/// not opened switch their whole weight.
TreeSolution brute_reps(const WeightedInstance& weighted,
                        const std::function<double(std::size_t, std::size_t)>& distance, std::size_t k,
                        std::size_t budget);

/// brute_reps under tree distances (t <= 6).
TreeSolution brute_tree(const TreeEmbedding& tree, const WeightedInstance& weighted, std::size_t k,
                        std::size_t budget);

}  // namespace lcc
