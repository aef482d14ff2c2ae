#include "lcc/oracle.hpp"

#include <algorithm>
#include <limits>

#include "lcc/error.hpp"

namespace lcc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Calls visit(subset) for every subset of {0..n-1} with 1 <= size <= k,
// sizes ascending, lexicographic within a size.
template <typename Visit>
void for_each_subset(std::size_t n, std::size_t k, Visit visit) {
  for (std::size_t size = 1; size <= std::min(k, n); ++size) {
    std::vector<std::size_t> idx(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = i;
    while (true) {
      visit(idx);
      std::size_t pos = size;
      while (pos > 0 && idx[pos - 1] == n - size + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t i = pos; i < size; ++i) idx[i] = idx[i - 1] + 1;
    }
  }
}

bool contains(const std::vector<Index>& sorted, Index v) { return std::binary_search(sorted.begin(), sorted.end(), v); }

double objective_of(const ConsistentProblem& problem, const Clustering& c, Objective objective) {
  return objective == Objective::kCenter ? cost_kcenter(problem, c) : cost_kmedian(problem, c);
}

}  // namespace

std::optional<Clustering> best_kmedian_assignment(const ConsistentProblem& problem, const std::vector<Index>& centers) {
  const std::size_t n = problem.size();
  Clustering c;
  c.centers = centers;
  c.assign.assign(n, kUnassigned);
  std::size_t forced = 0;
  struct Saving {
    double gain;
    Index point;
  };
  std::vector<Saving> savings;
  for (Index p = 0; p < n; ++p) {
    const Index near = nearest_center(problem.metric(), p, centers);
    if (!problem.in_p1(p)) {
      c.assign[p] = near;
      continue;
    }
    const Index old = problem.old_center(p);
    if (!contains(centers, old)) {
      c.assign[p] = near;
      ++forced;
      continue;
    }
    c.assign[p] = old;
    const double gain = problem.d(p, old) - problem.d(p, near);
    if (gain > 0.0) savings.push_back({gain, p});
  }
  if (forced > problem.budget()) return std::nullopt;
  std::stable_sort(savings.begin(), savings.end(), [](const Saving& a, const Saving& b) { return a.gain > b.gain; });
  const std::size_t spend = std::min(savings.size(), problem.budget() - forced);
  for (std::size_t i = 0; i < spend; ++i)
    c.assign[savings[i].point] = nearest_center(problem.metric(), savings[i].point, centers);
  return c;
}

std::optional<Clustering> best_kcenter_assignment(const ConsistentProblem& problem, const std::vector<Index>& centers) {
  const std::size_t n = problem.size();
  std::vector<Index> near(n);
  double floor = 0.0;
  for (Index p = 0; p < n; ++p) {
    near[p] = nearest_center(problem.metric(), p, centers);
    floor = std::max(floor, problem.d(p, near[p]));
  }
  auto forced_at = [&](double r) {
    std::size_t forced = 0;
    for (Index p : problem.p1()) {
      const Index old = problem.old_center(p);
      if (!contains(centers, old) || problem.d(p, old) > r) ++forced;
    }
    return forced;
  };
  std::vector<double> radii;
  for (Index p = 0; p < n; ++p)
    for (Index c : centers)
      if (problem.d(p, c) >= floor) radii.push_back(problem.d(p, c));
  std::sort(radii.begin(), radii.end());
  radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
  std::size_t lo = 0, hi = radii.size();
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (forced_at(radii[mid]) <= problem.budget()) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  if (lo == radii.size()) return std::nullopt;
  const double r = radii[lo];
  Clustering c;
  c.centers = centers;
  c.assign.assign(n, kUnassigned);
  for (Index p = 0; p < n; ++p) {
    c.assign[p] = near[p];
    if (problem.in_p1(p)) {
      const Index old = problem.old_center(p);
      if (contains(centers, old) && problem.d(p, old) <= r) c.assign[p] = old;
    }
  }
  return c;
}

OracleResult brute_force(const ConsistentProblem& problem, Objective objective) {
  const std::size_t n = problem.size();
  if (n > kOracleMaxPoints || problem.k() > kOracleMaxCenters)
    throw GuardError("oracle limited to n <= 14 and k <= 4");
  OracleResult best;
  best.opt_value = kInf;
  for_each_subset(n, problem.k(), [&](const std::vector<std::size_t>& subset) {
    ++best.enumerated;
    std::vector<Index> centers(subset.begin(), subset.end());
    auto c = objective == Objective::kMedian ? best_kmedian_assignment(problem, centers)
                                             : best_kcenter_assignment(problem, centers);
    if (!c) return;
    const double v = objective_of(problem, *c, objective);
    if (v < best.opt_value) {
      best.opt_value = v;
      best.opt_clustering = std::move(*c);
    }
  });
  if (best.opt_value == kInf) throw SolverError("no budget-feasible center set");
  return best;
}

OracleResult brute_force_assignments(const ConsistentProblem& problem, Objective objective) {
  const std::size_t n = problem.size();
  if (n > 8 || problem.k() > 3) throw GuardError("full assignment enumeration limited to n <= 8 and k <= 3");
  OracleResult best;
  best.opt_value = kInf;
  for_each_subset(n, problem.k(), [&](const std::vector<std::size_t>& subset) {
    ++best.enumerated;
    const std::size_t m = subset.size();
    Clustering c;
    c.centers.assign(subset.begin(), subset.end());
    c.assign.assign(n, c.centers[0]);
    std::vector<std::size_t> choice(n, 0);
    while (true) {
      for (Index p = 0; p < n; ++p) c.assign[p] = c.centers[choice[p]];
      if (swcost(problem, c) <= problem.budget()) {
        const double v = objective_of(problem, c, objective);
        if (v < best.opt_value) {
          best.opt_value = v;
          best.opt_clustering = c;
        }
      }
      std::size_t p = 0;
      while (p < n && ++choice[p] == m) choice[p++] = 0;
      if (p == n) break;
    }
  });
  if (best.opt_value == kInf) throw SolverError("no budget-feasible assignment");
  return best;
}

TreeSolution brute_reps(const WeightedInstance& weighted,
                        const std::function<double(std::size_t, std::size_t)>& distance, std::size_t k,
                        std::size_t budget) {
  const std::size_t t = weighted.size();
  TreeSolution best;
  double best_cost = kInf;
  for_each_subset(t, k, [&](const std::vector<std::size_t>& open) {
    std::vector<char> is_open(t, 0);
    for (std::size_t r : open) is_open[r] = 1;
    std::size_t switching = 0;
    double cost = 0.0;
    std::vector<std::size_t> center_of(t);
    for (std::size_t r = 0; r < t; ++r) {
      if (is_open[r]) {
        center_of[r] = r;
        continue;
      }
      if (weighted.reps[r].is_old()) switching += weighted.reps[r].weight;
      std::size_t near = open[0];
      for (std::size_t c : open)
        if (distance(r, c) < distance(r, near)) near = c;
      center_of[r] = near;
      cost += static_cast<double>(weighted.reps[r].weight) * distance(r, near);
    }
    if (switching > budget || !(cost < best_cost)) return;
    best_cost = cost;
    best.open = open;
    best.center_of = std::move(center_of);
    best.switching = switching;
  });
  if (best_cost == kInf) throw SolverError("no budget-feasible representative set");
  best.dp_value = best.tree_cost = best_cost;
  return best;
}

TreeSolution brute_tree(const TreeEmbedding& tree, const WeightedInstance& weighted, std::size_t k,
                        std::size_t budget) {
  if (weighted.size() > 6) throw GuardError("tree oracle limited to 6 representatives");
  return brute_reps(weighted, [&](std::size_t a, std::size_t b) { return tree.tree_distance(a, b); }, k, budget);
}

}  // namespace lcc
