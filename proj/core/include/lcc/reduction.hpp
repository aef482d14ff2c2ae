#pragma once

#include <cstdint>
#include <vector>

#include "lcc/problem.hpp"

namespace lcc {

enum class RepKind { kOld, kNew };

/// A weighted stand-in for a group of original points. Old representatives
/// are prior centers carrying their whole mu1-cluster; new ones are seeding
/// centers chosen among P2 \ P1.
struct Representative {
  Index point = 0;
  std::size_t weight = 0;
  RepKind kind = RepKind::kNew;

  bool is_old() const noexcept { return kind == RepKind::kOld; }
};

struct WeightedInstance {
  std::vector<Representative> reps;
  /// Representative (index into reps) of every original point.
  std::vector<std::size_t> rep_of;
  std::size_t total_weight = 0;

  std::size_t size() const noexcept { return reps.size(); }
  std::size_t old_weight() const noexcept;
};

inline constexpr double kDefaultSeedingMultiplier = 2.0;

/// Moves every P1 point onto its old center and every new point onto the
/// nearest of ceil(multiplier * k) k-median++ (D^1-sampled) centers drawn
/// from P2 \ P1. Zero-weight representatives are dropped.
WeightedInstance reduce_points(const ConsistentProblem& problem, std::uint64_t seed,
                               double multiplier = kDefaultSeedingMultiplier);

/// sum_p d(p, rep_of(p)).
double moving_cost(const ConsistentProblem& problem, const WeightedInstance& weighted);

}  // namespace lcc
