#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lcc/bundling.hpp"
#include "lcc/rng.hpp"
#include "lcc/simplex.hpp"

namespace lcc {

enum class LaminarKind { kGlobalUpper, kGlobalLower, kBundle, kPair, kPrefix };

struct LaminarConstraint {
  LaminarKind kind = LaminarKind::kBundle;
  /// Sorted copy indices.
  std::vector<std::size_t> members;
  lp::Sense sense = lp::Sense::kLessEqual;
  double rhs = 0.0;
};

/// Two laminar families over the facility copies: bundles, matched pair
/// unions and the global count on one side, prefixes of C1 in
/// non-increasing weight order on the other. Box 0 <= z <= 1 on every copy.
struct LaminarPolytope {
  std::vector<FacilityCopy> copies;
  std::vector<LaminarConstraint> constraints;
  /// Copy index of every C1 facility in non-increasing weight order.
  std::vector<std::size_t> c1_order;
  /// The relaxation point, one share per copy.
  std::vector<double> point;
};

LaminarPolytope build_laminar(const ConsistentProblem& problem, const FractionalSolution& frac,
                              const BundleStructure& bundles);

/// First constraint violated by z beyond tol, as text.
std::optional<std::string> polytope_violation(const LaminarPolytope& poly, const std::vector<double>& z,
                                              double tol = 1e-7);

/// True if every pair of sets within each family is nested or disjoint.
bool families_are_laminar(const LaminarPolytope& poly);

/// point = sum_m lambda[m] * vertices[m] with integral vertices.
struct Decomposition {
  std::vector<std::vector<std::uint8_t>> vertices;
  std::vector<double> lambda;
};

/// Face-walking decomposition: find an integral vertex of the minimal face
/// through the current point (random objective), step away from it to the
/// face boundary, repeat. Throws SolverError on a non-integral vertex.
Decomposition decompose(const LaminarPolytope& poly, std::uint64_t seed);

/// Facilities opened by a vertex (a facility opens if any of its copies does), ascending.
std::vector<Index> vertex_centers(const LaminarPolytope& poly, const std::vector<std::uint8_t>& vertex);

}  // namespace lcc
