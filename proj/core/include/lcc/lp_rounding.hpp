#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lcc/laminar.hpp"
#include "lcc/report.hpp"

namespace lcc {

/// The decomposition of one relaxation point, ready for repeated sampling.
class CenterSampler {
 public:
  CenterSampler(const ConsistentProblem& problem, const FractionalSolution& frac, std::uint64_t seed);

  const FractionalSolution& fractional() const noexcept { return frac_; }
  const BundleStructure& bundles() const noexcept { return bundles_; }
  const LaminarPolytope& polytope() const noexcept { return poly_; }
  const Decomposition& decomposition() const noexcept { return decomp_; }

  /// Index of a vertex drawn with probability lambda.
  std::size_t draw(Rng& rng) const;
  std::vector<Index> centers(std::size_t vertex) const;

 private:
  FractionalSolution frac_;
  BundleStructure bundles_;
  LaminarPolytope poly_;
  Decomposition decomp_;
};

/// Text of the first structural property a vertex breaks: more than k
/// centers, two centers in a bundle, an uncovered matched pair, or a
/// violated C1 prefix cap.
std::optional<std::string> check_vertex_properties(const ConsistentProblem& problem, const CenterSampler& sampler,
                                                   std::size_t vertex);

/// First C1 facility in non-increasing weight order that is closed in the
/// sample but fractionally open in the relaxation.
std::optional<Index> repair_center(const ConsistentProblem& problem, const FractionalSolution& frac,
                                   const std::vector<Index>& centers);

enum class RoundingMode { kAugmentCenter, kAugmentSwitch };

struct RoundingOptions {
  RoundingMode mode = RoundingMode::kAugmentCenter;
  /// Heavy threshold for kAugmentSwitch, in (0, 1].
  double epsilon = 0.5;
  /// Samples drawn per relaxation; the cheapest admissible one is kept.
  std::size_t samples = 1;
  /// Upper bound on the number of heavy C1 centers to guess over.
  std::size_t max_heavy = 20;
};

/// LP rounding with one extra center (kAugmentCenter) or with heavy-center
/// guessing and a (1 + epsilon) S switching allowance (kAugmentSwitch).
SolutionReport round_solution(const ConsistentProblem& problem, std::uint64_t seed,
                              const RoundingOptions& options = {});

}  // namespace lcc
