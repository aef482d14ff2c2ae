#include "lcc/problem.hpp"

#include <algorithm>
#include <string>

#include "lcc/error.hpp"

namespace lcc {

void check_clustering(const Clustering& c, std::size_t n, std::size_t max_centers) {
  if (c.assign.size() != n) {
    throw StructuralError("assignment has " + std::to_string(c.assign.size()) +
                          " slots for " + std::to_string(n) + " points");
  }
  if (c.centers.size() > max_centers) {
    throw StructuralError("clustering opens " + std::to_string(c.centers.size()) +
                          " centers, limit is " + std::to_string(max_centers));
  }
  std::vector<char> is_center(n, 0);
  for (Index ctr : c.centers) {
    if (ctr >= n) throw StructuralError("center " + std::to_string(ctr) + " out of range");
    if (is_center[ctr]) throw StructuralError("center " + std::to_string(ctr) + " listed twice");
    is_center[ctr] = 1;
  }
  for (Index p = 0; p < n; ++p) {
    const Index a = c.assign[p];
    if (a == kUnassigned) continue;
    if (a >= n || !is_center[a]) {
      throw StructuralError("point " + std::to_string(p) + " assigned to non-center " +
                            std::to_string(a));
    }
  }
}

ConsistentProblem::ConsistentProblem(Metric metric, std::vector<Index> p1, Clustering prior,
                                     std::size_t budget, std::size_t k)
    : metric_(std::move(metric)),
      p1_(std::move(p1)),
      prior_(std::move(prior)),
      budget_(budget),
      k_(k) {
  const std::size_t n = metric_.size();
  if (k_ == 0) throw ValidationError("k must be positive");
  std::sort(p1_.begin(), p1_.end());
  in_p1_.assign(n, 0);
  for (std::size_t i = 0; i < p1_.size(); ++i) {
    if (p1_[i] >= n) throw ValidationError("P1 index " + std::to_string(p1_[i]) + " out of range");
    if (i > 0 && p1_[i] == p1_[i - 1]) {
      throw ValidationError("P1 index " + std::to_string(p1_[i]) + " listed twice");
    }
    in_p1_[p1_[i]] = 1;
  }
  for (Index i = 0; i < n; ++i)
    if (!in_p1_[i]) new_points_.push_back(i);

  if (prior_.assign.empty() && p1_.empty()) prior_.assign.assign(n, kUnassigned);
  if (prior_.assign.size() != n) {
    throw ValidationError("prior assignment must have one slot per point");
  }
  std::sort(prior_.centers.begin(), prior_.centers.end());
  try {
    check_clustering(prior_, n, k_);
  } catch (const StructuralError& e) {
    throw ValidationError(std::string("prior clustering: ") + e.what());
  }
  for (Index c : prior_.centers) {
    if (!in_p1_[c]) throw ValidationError("prior center " + std::to_string(c) + " is not in P1");
  }
  for (Index p = 0; p < n; ++p) {
    const bool assigned = prior_.assign[p] != kUnassigned;
    if (assigned != static_cast<bool>(in_p1_[p])) {
      throw ValidationError("prior must assign exactly the P1 points (point " + std::to_string(p) +
                            ")");
    }
  }
  if (budget_ > p1_.size()) {
    throw ValidationError("budget S = " + std::to_string(budget_) + " exceeds |P1| = " +
                          std::to_string(p1_.size()));
  }
  prior_weight_.assign(n, 0);
  for (Index p : p1_) ++prior_weight_[prior_.assign[p]];
  centers_by_weight_ = prior_.centers;
  std::stable_sort(centers_by_weight_.begin(), centers_by_weight_.end(),
                   [&](Index a, Index b) { return prior_weight_[a] > prior_weight_[b]; });
}

double ConsistentProblem::prior_cost() const {
  double total = 0.0;
  for (Index p : p1_) total += metric_(p, prior_.assign[p]);
  return total;
}

ConsistentProblem ConsistentProblem::with_budget(std::size_t budget) const {
  return ConsistentProblem(metric_, p1_, prior_, budget, k_);
}

ConsistentProblem ConsistentProblem::with_k(std::size_t k) const {
  return ConsistentProblem(metric_, p1_, prior_, budget_, k);
}

namespace {

void require_total(const ConsistentProblem& problem, const Clustering& sol) {
  if (sol.assign.size() != problem.size()) {
    throw StructuralError("solution assignment size does not match the instance");
  }
  for (Index p = 0; p < sol.assign.size(); ++p) {
    if (sol.assign[p] == kUnassigned) {
      throw StructuralError("point " + std::to_string(p) + " is unassigned");
    }
    if (sol.assign[p] >= problem.size()) {
      throw StructuralError("point " + std::to_string(p) + " assigned out of range");
    }
  }
}

}  // namespace

double cost_kcenter(const ConsistentProblem& problem, const Clustering& sol) {
  require_total(problem, sol);
  double worst = 0.0;
  for (Index p = 0; p < sol.assign.size(); ++p) worst = std::max(worst, problem.d(p, sol.assign[p]));
  return worst;
}

double cost_kmedian(const ConsistentProblem& problem, const Clustering& sol) {
  require_total(problem, sol);
  double total = 0.0;
  for (Index p = 0; p < sol.assign.size(); ++p) total += problem.d(p, sol.assign[p]);
  return total;
}

std::size_t swcost(const ConsistentProblem& problem, const Clustering& sol) {
  require_total(problem, sol);
  std::size_t count = 0;
  for (Index p : problem.p1())
    if (problem.old_center(p) != sol.assign[p]) ++count;
  return count;
}

Index nearest_center(const Metric& metric, Index p, const std::vector<Index>& centers) {
  Index best = kUnassigned;
  double best_d = 0.0;
  for (Index c : centers) {
    const double d = metric(p, c);
    if (best == kUnassigned || d < best_d || (d == best_d && c < best)) {
      best = c;
      best_d = d;
    }
  }
  return best;
}

Clustering assign_nearest(const ConsistentProblem& problem, std::vector<Index> centers) {
  std::sort(centers.begin(), centers.end());
  Clustering out{std::move(centers), std::vector<Index>(problem.size(), kUnassigned)};
  if (out.centers.empty()) throw StructuralError("cannot assign points to an empty center set");
  for (Index p = 0; p < problem.size(); ++p) out.assign[p] = nearest_center(problem.metric(), p, out.centers);
  return out;
}

Clustering assign_keep_open_old(const ConsistentProblem& problem, std::vector<Index> centers) {
  Clustering out = assign_nearest(problem, std::move(centers));
  std::vector<char> open(problem.size(), 0);
  for (Index c : out.centers) open[c] = 1;
  for (Index p : problem.p1()) {
    const Index old = problem.old_center(p);
    if (open[old]) out.assign[p] = old;
  }
  return out;
}

}  // namespace lcc
