#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "lcc/lp_relaxation.hpp"

namespace lcc {

inline constexpr std::size_t kNoBundle = static_cast<std::size_t>(-1);

/// A piece of a facility's fractional opening. Facilities outside C1 may be
/// cut into an in-bundle piece and a remainder; C1 facilities always form a
/// single copy (possibly with share 0).
struct FacilityCopy {
  Index facility = 0;
  double share = 0.0;
  /// Index into BundleStructure::filtered, or kNoBundle.
  std::size_t bundle = kNoBundle;
};

struct BundleStructure {
  std::vector<double> dav;
  /// Filtered clients in admission order.
  std::vector<Index> filtered;
  /// R_j per filtered client.
  std::vector<double> radius;
  /// Copy indices per filtered client, closest first.
  std::vector<std::vector<std::size_t>> bundles;
  std::vector<double> volume;
  /// Every copy with positive share, plus one copy per C1 facility.
  std::vector<FacilityCopy> copies;
  /// Pairs of indices into `filtered`.
  std::vector<std::pair<std::size_t, std::size_t>> matching;
  std::optional<std::size_t> unmatched;
};

/// Filters clients by d_av, builds disjoint bundles of nearby facility
/// copies and greedily matches the filtered clients closest pair first.
BundleStructure filter_and_bundle(const ConsistentProblem& problem, const FractionalSolution& frac);

/// Human-readable description of the first violated bundle invariant, if any.
std::optional<std::string> audit_bundles(const ConsistentProblem& problem, const FractionalSolution& frac,
                                         const BundleStructure& bundles, double tol = 1e-7);

}  // namespace lcc
