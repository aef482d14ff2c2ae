#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "lcc/metric.hpp"

namespace lcc {

inline constexpr Index kUnassigned = std::numeric_limits<Index>::max();

/// A center set plus an assignment. `assign` has one slot per point of the
/// instance; points the clustering does not cover hold kUnassigned.
/// Centers are identified by point index, so co-located points are distinct
/// centers.
struct Clustering {
  std::vector<Index> centers;
  std::vector<Index> assign;

  bool operator==(const Clustering&) const = default;
};

/// Throws StructuralError unless every assigned point maps into `centers`,
/// centers are distinct in-range points, and at most `max_centers` centers exist.
void check_clustering(const Clustering& c, std::size_t n, std::size_t max_centers);

/// A label-consistent clustering instance: the new point set P2 (the
/// metric), the old subset P1 with its prior clustering, the switching
/// budget S and the center count k.
class ConsistentProblem {
 public:
  /// Validates every invariant; throws ValidationError on violation.
  ConsistentProblem(Metric metric, std::vector<Index> p1, Clustering prior, std::size_t budget,
                    std::size_t k);

  const Metric& metric() const noexcept { return metric_; }
  std::size_t size() const noexcept { return metric_.size(); }
  /// Sorted indices of P1.
  const std::vector<Index>& p1() const noexcept { return p1_; }
  bool in_p1(Index i) const noexcept { return in_p1_[i] != 0; }
  /// Sorted indices of P2 \ P1.
  const std::vector<Index>& new_points() const noexcept { return new_points_; }
  const Clustering& prior() const noexcept { return prior_; }
  std::size_t budget() const noexcept { return budget_; }
  std::size_t k() const noexcept { return k_; }

  /// Old center assigned to point i, or kUnassigned for points outside P1.
  Index old_center(Index i) const noexcept { return prior_.assign[i]; }
  /// |{p in P1 : mu1(p) = c}| for a prior center c (0 for other points).
  std::size_t prior_weight(Index c) const noexcept { return prior_weight_[c]; }
  /// Prior centers in non-increasing weight order, ties by ascending index.
  const std::vector<Index>& centers_by_weight() const noexcept { return centers_by_weight_; }

  double d(Index i, Index j) const noexcept { return metric_(i, j); }

  /// cost(P1, C1): the prior's k-median cost on P1.
  double prior_cost() const;

  /// Same problem with another budget / center count.
  ConsistentProblem with_budget(std::size_t budget) const;
  ConsistentProblem with_k(std::size_t k) const;

 private:
  Metric metric_;
  std::vector<Index> p1_;
  std::vector<char> in_p1_;
  std::vector<Index> new_points_;
  Clustering prior_;
  std::size_t budget_;
  std::size_t k_;
  std::vector<std::size_t> prior_weight_;
  std::vector<Index> centers_by_weight_;
};

/// max_j d(j, mu(j)) over all of P2. Throws StructuralError on unassigned points.
double cost_kcenter(const ConsistentProblem& problem, const Clustering& sol);

/// sum_j d(j, mu(j)) over all of P2. Throws StructuralError on unassigned points.
double cost_kmedian(const ConsistentProblem& problem, const Clustering& sol);

/// Number of P1 points whose assigned center differs between prior and sol.
std::size_t swcost(const ConsistentProblem& problem, const Clustering& sol);

/// Assigns every point to its closest center (ties to the lowest index),
/// except P1 points whose old center is open, which keep it. This is the
/// rule shared by the LP rounding and the oracle baseline.
Clustering assign_keep_open_old(const ConsistentProblem& problem, std::vector<Index> centers);

/// Plain nearest-center assignment (ties to the lowest center index).
Clustering assign_nearest(const ConsistentProblem& problem, std::vector<Index> centers);

/// Closest center of point p among `centers` (ties to the lowest index).
Index nearest_center(const Metric& metric, Index p, const std::vector<Index>& centers);

}  // namespace lcc
