#include "lcc/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lcc/error.hpp"
#include "lcc/rng.hpp"

namespace lcc {

std::size_t WeightedInstance::old_weight() const noexcept {
  std::size_t total = 0;
  for (const auto& r : reps)
    if (r.is_old()) total += r.weight;
  return total;
}

WeightedInstance reduce_points(const ConsistentProblem& problem, std::uint64_t seed,
                               double multiplier) {
  if (!(multiplier >= 1.0)) throw ValidationError("seeding multiplier must be at least 1");
  const Metric& d = problem.metric();
  const std::size_t n = problem.size();
  WeightedInstance w;
  w.rep_of.assign(n, 0);
  w.total_weight = n;

  std::vector<std::size_t> rep_of_center(n, std::numeric_limits<std::size_t>::max());
  for (Index c : problem.prior().centers) {
    const std::size_t weight = problem.prior_weight(c);
    if (weight == 0) continue;
    rep_of_center[c] = w.reps.size();
    w.reps.push_back({c, weight, RepKind::kOld});
  }
  for (Index p : problem.p1()) w.rep_of[p] = rep_of_center[problem.old_center(p)];

  const auto& fresh = problem.new_points();
  if (fresh.empty()) return w;

  Rng rng(seed);
  const auto wanted = static_cast<std::size_t>(std::ceil(multiplier * static_cast<double>(problem.k())));
  std::vector<Index> chosen;
  chosen.push_back(fresh[rng.below(fresh.size())]);
  std::vector<double> nearest(fresh.size());
  for (std::size_t i = 0; i < fresh.size(); ++i) nearest[i] = d(fresh[i], chosen[0]);
  while (chosen.size() < wanted && chosen.size() < fresh.size()) {
    const std::size_t pick = rng.weighted(nearest);
    if (pick == nearest.size()) break;  // every new point already sits on a center
    chosen.push_back(fresh[pick]);
    for (std::size_t i = 0; i < fresh.size(); ++i)
      nearest[i] = std::min(nearest[i], d(fresh[i], fresh[pick]));
  }

  // Nearest chosen center, ties to the lowest point index; co-located
  // picks therefore collapse onto one representative.
  std::vector<Index> sorted = chosen;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::size_t> count(n, 0);
  std::vector<Index> target(fresh.size());
  for (std::size_t i = 0; i < fresh.size(); ++i) {
    target[i] = nearest_center(d, fresh[i], sorted);
    ++count[target[i]];
  }
  std::vector<std::size_t> rep_of_new(n, std::numeric_limits<std::size_t>::max());
  for (Index c : sorted) {
    if (count[c] == 0) continue;
    rep_of_new[c] = w.reps.size();
    w.reps.push_back({c, count[c], RepKind::kNew});
  }
  for (std::size_t i = 0; i < fresh.size(); ++i) w.rep_of[fresh[i]] = rep_of_new[target[i]];
  return w;
}

double moving_cost(const ConsistentProblem& problem, const WeightedInstance& weighted) {
  double total = 0.0;
  for (Index p = 0; p < problem.size(); ++p) total += problem.d(p, weighted.reps[weighted.rep_of[p]].point);
  return total;
}

}  // namespace lcc
