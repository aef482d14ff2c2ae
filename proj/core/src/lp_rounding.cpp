#include "lcc/lp_rounding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lcc/error.hpp"

namespace lcc {

CenterSampler::CenterSampler(const ConsistentProblem& problem, const FractionalSolution& frac, std::uint64_t seed)
    : frac_(frac), bundles_(filter_and_bundle(problem, frac)), poly_(build_laminar(problem, frac, bundles_)),
      decomp_(decompose(poly_, seed)) {}

std::size_t CenterSampler::draw(Rng& rng) const {
  const std::size_t m = rng.weighted(decomp_.lambda);
  return m == decomp_.lambda.size() ? decomp_.lambda.size() - 1 : m;
}

std::vector<Index> CenterSampler::centers(std::size_t vertex) const {
  return vertex_centers(poly_, decomp_.vertices.at(vertex));
}

std::optional<std::string> check_vertex_properties(const ConsistentProblem& problem, const CenterSampler& sampler,
                                                   std::size_t vertex) {
  const auto& v = sampler.decomposition().vertices.at(vertex);
  const auto& b = sampler.bundles();
  if (sampler.centers(vertex).size() > problem.k()) return "more than k centers";
  std::vector<int> per_bundle(b.filtered.size(), 0);
  for (std::size_t a = 0; a < b.filtered.size(); ++a)
    for (std::size_t e : b.bundles[a]) per_bundle[a] += v[e];
  for (int count : per_bundle)
    if (count > 1) return "two centers in one bundle";
  for (auto [a, c] : b.matching)
    if (per_bundle[a] + per_bundle[c] < 1) return "matched pair without a center";
  const auto& poly = sampler.polytope();
  double closed = 0.0;
  std::size_t shut = 0;
  for (std::size_t e : poly.c1_order) {
    closed += 1.0 - poly.point[e];
    shut += v[e] ? 0 : 1;
    if (static_cast<double>(shut) > std::max(0.0, std::ceil(closed - 1e-7))) return "C1 prefix cap violated";
  }
  return std::nullopt;
}

std::optional<Index> repair_center(const ConsistentProblem& problem, const FractionalSolution& frac,
                                   const std::vector<Index>& centers) {
  for (Index c : problem.centers_by_weight()) {
    if (std::binary_search(centers.begin(), centers.end(), c)) continue;
    if (frac.y[c] > 0.0 && frac.y[c] < 1.0) return c;
  }
  return std::nullopt;
}

namespace {

struct Candidate {
  Clustering clustering;
  double cost = 0.0;
  std::size_t swcost = 0;
};

// Draws `samples` vertices and keeps the cheapest with swcost <= cap.
std::optional<Candidate> best_sample(const ConsistentProblem& problem, const CenterSampler& sampler, Rng& rng,
                                     std::size_t samples, bool augment, double cap,
                                     std::optional<Candidate>* fallback = nullptr) {
  std::optional<Candidate> best;
  for (std::size_t s = 0; s < std::max<std::size_t>(1, samples); ++s) {
    std::vector<Index> centers = sampler.centers(sampler.draw(rng));
    if (augment) {
      if (auto extra = repair_center(problem, sampler.fractional(), centers)) {
        centers.insert(std::upper_bound(centers.begin(), centers.end(), *extra), *extra);
      }
    }
    Candidate c;
    c.clustering = assign_keep_open_old(problem, std::move(centers));
    c.cost = cost_kmedian(problem, c.clustering);
    c.swcost = swcost(problem, c.clustering);
    if (static_cast<double>(c.swcost) > cap + 1e-9) {
      if (fallback && (!*fallback || c.cost < (*fallback)->cost)) *fallback = std::move(c);
      continue;
    }
    if (!best || c.cost < best->cost) best = std::move(c);
  }
  return best;
}

}  // namespace

SolutionReport round_solution(const ConsistentProblem& problem, std::uint64_t seed, const RoundingOptions& options) {
  if (options.mode == RoundingMode::kAugmentCenter) {
    const FractionalSolution frac = solve_lp(problem);
    const CenterSampler sampler(problem, frac, child_seed(seed, 0));
    Rng rng(child_seed(seed, 1));
    // A sample over budget is still reported (callers audit swcost) when no
    // sample stays within it.
    std::optional<Candidate> fallback;
    auto best = best_sample(problem, sampler, rng, options.samples, true, static_cast<double>(problem.budget()),
                            &fallback);
    if (!best) best = std::move(fallback);
    SolutionReport r = make_report(problem, std::move(best->clustering), Objective::kMedian, "kmedian-lp:k+1",
                                   problem.k() + 1);
    r.meta["mode"] = std::string("k-plus-one");
    r.meta["seed"] = static_cast<std::int64_t>(seed);
    r.meta["lp_objective"] = frac.objective;
    r.meta["vertices"] = static_cast<std::int64_t>(sampler.decomposition().vertices.size());
    r.meta["samples"] = static_cast<std::int64_t>(std::max<std::size_t>(1, options.samples));
    return r;
  }

  if (!(options.epsilon > 0.0 && options.epsilon <= 1.0)) throw ValidationError("epsilon must lie in (0, 1]");
  const double threshold = options.epsilon * static_cast<double>(problem.budget());
  std::vector<Index> heavy;
  for (Index c : problem.centers_by_weight())
    if (static_cast<double>(problem.prior_weight(c)) >= threshold) heavy.push_back(c);
  if (heavy.size() > options.max_heavy) throw GuardError("too many heavy centers to guess over");
  std::sort(heavy.begin(), heavy.end());

  const double cap = (1.0 + options.epsilon) * static_cast<double>(problem.budget());
  std::optional<Candidate> best;
  double best_lp = 0.0;
  std::size_t guesses = 0;
  std::size_t feasible_guesses = 0;
  const std::size_t h = heavy.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << h); ++mask) {
    std::size_t closed_weight = 0;
    for (std::size_t b = 0; b < h; ++b)
      if (mask >> b & 1U) closed_weight += problem.prior_weight(heavy[b]);
    if (closed_weight > problem.budget()) continue;
    ++guesses;
    FixedOpenings fixed(problem.size());
    for (std::size_t b = 0; b < h; ++b) fixed[heavy[b]] = (mask >> b & 1U) ? 0.0 : 1.0;
    auto frac = solve_lp(problem, fixed);
    if (!frac) continue;
    ++feasible_guesses;
    const CenterSampler sampler(problem, *frac, child_seed(child_seed(seed, mask), 0));
    Rng rng(child_seed(child_seed(seed, mask), 1));
    auto cand = best_sample(problem, sampler, rng, options.samples, false, cap);
    if (cand && (!best || cand->cost < best->cost)) {
      best = std::move(cand);
      best_lp = frac->objective;
    }
  }
  if (!best) throw SolverError("no heavy-center guess produced a solution within (1 + eps) S");
  SolutionReport r =
      make_report(problem, std::move(best->clustering), Objective::kMedian, "kmedian-lp:eps", problem.k());
  r.meta["mode"] = std::string("eps-switch");
  r.meta["seed"] = static_cast<std::int64_t>(seed);
  r.meta["epsilon"] = options.epsilon;
  r.meta["heavy"] = static_cast<std::int64_t>(h);
  r.meta["guesses"] = static_cast<std::int64_t>(guesses);
  r.meta["feasible_guesses"] = static_cast<std::int64_t>(feasible_guesses);
  r.meta["lp_objective"] = best_lp;
  r.meta["samples"] = static_cast<std::int64_t>(std::max<std::size_t>(1, options.samples));
  return r;
}

}  // namespace lcc
