#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "lcc/reduction.hpp"
#include "lcc/tree_embedding.hpp"

namespace lcc {

/// A clustering of the representatives of a weighted instance.
struct TreeSolution {
  /// Opened representatives, ascending.
  std::vector<std::size_t> open;
  /// Representative index of the center each representative is routed to.
  std::vector<std::size_t> center_of;
  /// Objective the DP optimized: the exact tree cost for the exact DP, the
  /// grid value D reached at the root for the rounded DP.
  double dp_value = 0.0;
  /// sum_r weight(r) * tree_distance(r, center_of(r)).
  double tree_cost = 0.0;
  /// Total weight of old representatives that are not kept open.
  std::size_t switching = 0;
};

/// Cost and switching of an arbitrary representative-level solution on the tree.
double tree_solution_cost(const TreeEmbedding& tree, const WeightedInstance& weighted,
                          const std::vector<std::size_t>& center_of);
std::size_t tree_solution_switching(const WeightedInstance& weighted,
                                    const std::vector<std::size_t>& open);

/// Table cells the exact DP would fill: nodes * (k + 1) * (S + 1).
std::size_t exact_dp_cells(const TreeEmbedding& tree, std::size_t k, std::size_t budget);

/// Exact DP over (node, centers, switching). Minimizes the tree k-median
/// cost subject to at most k centers and at most `budget` switched points.
TreeSolution exact_tree_dp(const TreeEmbedding& tree, const WeightedInstance& weighted,
                           std::size_t k, std::size_t budget);

struct RoundedDpOptions {
  /// Grid ratio override; defaults to 1 / (101 * depth).
  std::optional<double> epsilon;
  /// Charge a new representative's weight as switching whenever it is opened.
  bool charge_new_leaves = false;
};

struct RoundedDpInfo {
  double epsilon = 0.0;
  std::size_t grid_size = 0;
  /// Root grid index of the returned solution.
  std::size_t grid_index = 0;
  /// Largest Pareto frontier held at any (node, centers) cell.
  std::size_t max_frontier = 0;
};

/// Switching-minimizing DP over a geometric grid of connection costs:
/// for every (node, j) it keeps the Pareto frontier of (rounded cost,
/// switching) pairs and returns the smallest root cost with switching
/// within budget. Every combined cost is rounded up to the grid, so the
/// root value bounds the returned solution's tree cost from above. Throws SolverError if no budget-feasible state exists.
TreeSolution rounded_tree_dp(const TreeEmbedding& tree, const WeightedInstance& weighted,
                             std::size_t k, std::size_t budget, const RoundedDpOptions& options = {},
                             RoundedDpInfo* info = nullptr);

}  // namespace lcc
