#include "lcc/kcenter.hpp"

#include <algorithm>

#include "lcc/error.hpp"

namespace lcc::kcenter {

const char* to_string(AttemptStatus status) noexcept {
  switch (status) {
    case AttemptStatus::kFeasible: return "feasible";
    case AttemptStatus::kTooManyNewCenters: return "too_many_new_centers";
    case AttemptStatus::kTooManyCenters: return "too_many_centers";
    case AttemptStatus::kOverBudget: return "over_budget";
  }
  return "unknown";
}

RadiusAttempt solve_for_radius(const ConsistentProblem& problem, double radius) {
  if (!(radius >= 0.0)) throw ValidationError("radius must be nonnegative");
  const Metric& d = problem.metric();
  const std::size_t n = problem.size();
  const auto& old_centers = problem.prior().centers;  // ascending
  const double two_r = 2.0 * radius;

  RadiusAttempt at;
  at.radius = radius;

  // Phase 1: cover what the old centers' 2R-balls miss with a greedy 2R-net.
  std::vector<char> uncovered(n, 1);
  for (Index p = 0; p < n; ++p) {
    for (Index c : old_centers) {
      if (d(p, c) <= two_r) {
        uncovered[p] = 0;
        break;
      }
    }
    if (uncovered[p]) at.initially_uncovered.push_back(p);
  }
  for (Index u : at.initially_uncovered) {
    if (!uncovered[u]) continue;
    at.new_centers.push_back(u);
    for (Index p : at.initially_uncovered)
      if (uncovered[p] && d(u, p) <= two_r) uncovered[p] = 0;
  }
  if (at.new_centers.size() > problem.k()) {
    at.status = AttemptStatus::kTooManyNewCenters;
    return at;
  }

  // Phase 2: weights, domination marking, replacement, top-up.
  std::vector<std::size_t> weight_of(n, 0);
  for (Index p : problem.p1()) {
    const Index c = problem.old_center(p);
    if (d(c, p) <= two_r) ++weight_of[c];
  }
  at.follower_weight.reserve(old_centers.size());
  for (Index c : old_centers) at.follower_weight.push_back(weight_of[c]);

  std::vector<Index> order = old_centers;
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return weight_of[a] > weight_of[b]; });

  std::vector<char> marked(n, 0);
  for (Index c : order) {
    if (marked[c]) continue;
    at.temporary.push_back(c);
    for (Index other : old_centers)
      if (d(c, other) <= two_r) marked[other] = 1;
  }

  std::vector<Index> centers = at.new_centers;
  std::vector<char> open(n, 0);
  for (Index c : centers) open[c] = 1;
  for (Index t : at.temporary) {
    // `order` is weight-sorted, so the first hit is the heaviest (lowest index on ties).
    Index best = t;
    for (Index c : order) {
      if (d(t, c) <= radius) {
        best = c;
        break;
      }
    }
    at.replacement.push_back(best);
    if (!open[best]) {
      open[best] = 1;
      centers.push_back(best);
    }
  }
  if (centers.size() > problem.k()) {
    at.status = AttemptStatus::kTooManyCenters;
    return at;
  }
  for (Index c : order) {
    if (centers.size() >= problem.k()) break;
    if (!open[c]) {
      open[c] = 1;
      centers.push_back(c);
    }
  }

  // Keep mu1(p) when it is open and within 2R, else the closest open center.
  std::sort(centers.begin(), centers.end());
  Clustering out{centers, std::vector<Index>(n, kUnassigned)};
  for (Index p = 0; p < n; ++p) {
    const Index old = problem.old_center(p);
    if (old != kUnassigned && open[old] && d(p, old) <= two_r) {
      out.assign[p] = old;
    } else {
      out.assign[p] = nearest_center(d, p, centers);
    }
  }

  std::size_t retained = 0;
  for (Index c : old_centers)
    if (open[c]) retained += weight_of[c];
  at.weight_switch_bound = problem.p1().size() - retained;
  at.swcost = swcost(problem, out);
  at.clustering = std::move(out);
  at.status = at.swcost <= problem.budget() ? AttemptStatus::kFeasible : AttemptStatus::kOverBudget;
  return at;
}

std::vector<double> candidate_radii(const ConsistentProblem& problem) {
  const std::size_t n = problem.size();
  std::vector<double> radii;
  radii.reserve(n * (n - 1) / 2 + 1);
  radii.push_back(0.0);
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) radii.push_back(problem.d(i, j));
  std::sort(radii.begin(), radii.end());
  radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
  return radii;
}

namespace {

Outcome finish(const ConsistentProblem& problem, RadiusAttempt attempt, std::size_t attempts,
               const char* search) {
  Outcome out;
  out.attempts = attempts;
  if (!attempt.feasible()) return out;
  out.radius = attempt.radius;
  SolutionReport report = make_report(problem, std::move(*attempt.clustering), Objective::kCenter,
                                      "kcenter", problem.k());
  report.meta["radius"] = attempt.radius;
  report.meta["search"] = std::string(search);
  report.meta["attempts"] = static_cast<std::int64_t>(attempts);
  report.meta["new_centers"] = static_cast<std::int64_t>(attempt.new_centers.size());
  report.meta["temporary_centers"] = static_cast<std::int64_t>(attempt.temporary.size());
  out.report = std::move(report);
  return out;
}

}  // namespace

Outcome solve(const ConsistentProblem& problem, const Options& options) {
  const std::vector<double> radii = candidate_radii(problem);
  std::size_t attempts = 0;
  if (options.linear_scan) {
    for (double r : radii) {
      ++attempts;
      RadiusAttempt at = solve_for_radius(problem, r);
      if (at.feasible()) return finish(problem, std::move(at), attempts, "linear");
    }
    return Outcome{std::nullopt, std::nullopt, attempts};
  }

  // The largest radius must work for the search to have a valid upper end.
  std::size_t lo = 0;
  std::size_t hi = radii.size() - 1;
  RadiusAttempt best = solve_for_radius(problem, radii[hi]);
  ++attempts;
  if (!best.feasible()) return Outcome{std::nullopt, std::nullopt, attempts};
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    RadiusAttempt at = solve_for_radius(problem, radii[mid]);
    ++attempts;
    if (at.feasible()) {
      hi = mid;
      best = std::move(at);
    } else {
      lo = mid + 1;
    }
  }
  return finish(problem, std::move(best), attempts, "binary");
}

Outcome solve_at(const ConsistentProblem& problem, double radius) {
  return finish(problem, solve_for_radius(problem, radius), 1, "fixed");
}

}  // namespace lcc::kcenter
