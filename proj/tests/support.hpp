#pragma once

// Shared fixtures and straight-line reference computations for the tests.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "lcc/corpus.hpp"
#include "lcc/problem.hpp"
#include "lcc/reduction.hpp"
#include "lcc/rng.hpp"
#include "lcc/tree_embedding.hpp"

namespace lcc::testing {

inline Metric line_metric(const std::vector<double>& xs) {
  std::vector<std::vector<double>> pts;
  for (double x : xs) pts.push_back({x});
  return Metric::euclidean(std::move(pts));
}

/// Integer-valued random metric: shortest-path closure of weights in [1, w_max].
inline Metric random_integer_metric(std::size_t n, Rng& rng, std::size_t w_max = 20) {
  std::vector<std::vector<double>> t(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) t[i][j] = t[j][i] = static_cast<double>(1 + rng.below(w_max));
  return Metric::explicit_table(metric_closure(std::move(t)));
}

/// The acceptance-style oracle corpus: n <= 12, k <= 3, S in {0, 1, 2}.
inline std::vector<ConsistentProblem> oracle_corpus(std::size_t count, std::uint64_t seed,
                                                    Geometry geometry = Geometry::kEuclidean) {
  CorpusSpec spec;
  spec.count = count;
  spec.n_min = 4;
  spec.n_max = 12;
  spec.k_min = 1;
  spec.k_max = 3;
  spec.budget_values = {0, 1, 2};
  spec.geometry = geometry;
  spec.seed = seed;
  return generate_corpus(spec);
}

/// Recomputes k-median cost without the library's helpers.
inline double reference_kmedian(const ConsistentProblem& p, const Clustering& c) {
  double total = 0.0;
  for (Index j = 0; j < p.size(); ++j) total += p.metric()(j, c.assign[j]);
  return total;
}

inline double reference_kcenter(const ConsistentProblem& p, const Clustering& c) {
  double worst = 0.0;
  for (Index j = 0; j < p.size(); ++j) worst = std::max(worst, p.metric()(j, c.assign[j]));
  return worst;
}

inline std::size_t reference_swcost(const ConsistentProblem& p, const Clustering& c) {
  std::size_t count = 0;
  for (Index j = 0; j < p.size(); ++j)
    if (p.prior().assign[j] != kUnassigned && p.prior().assign[j] != c.assign[j]) ++count;
  return count;
}

/// A weighted instance whose representatives are points 0..t-1 of a metric.
inline WeightedInstance synthetic_reps(std::size_t t, Rng& rng, std::size_t max_weight = 6) {
  WeightedInstance w;
  for (std::size_t r = 0; r < t; ++r) {
    Representative rep;
    rep.point = r;
    rep.weight = 1 + rng.below(max_weight);
    rep.kind = rng.below(2) == 0 ? RepKind::kOld : RepKind::kNew;
    w.reps.push_back(rep);
    w.total_weight += rep.weight;
  }
  w.rep_of.resize(t);
  std::iota(w.rep_of.begin(), w.rep_of.end(), std::size_t{0});
  return w;
}

}  // namespace lcc::testing
