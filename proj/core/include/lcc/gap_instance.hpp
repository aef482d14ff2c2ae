#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "lcc/problem.hpp"

namespace lcc {

/// Exact fraction with a positive denominator, kept in lowest terms.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d = 1);

  double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;

  friend Rational operator+(Rational a, Rational b);
  friend Rational operator-(Rational a, Rational b);
  friend Rational operator*(Rational a, Rational b);
  friend bool operator==(const Rational&, const Rational&) = default;
};

struct GapAnalysis {
  std::size_t k = 0;
  std::size_t m = 0;
  double distance = 0.0;
  /// Stand-in for an unreachable distance.
  double theta = 0.0;
  /// Opening of every old center in the fractional witness.
  Rational witness_y;
  /// sum over C1 of (1 - y) * weight for the witness.
  Rational witness_switching;
  /// Connection cost of the witness, D / M + k M.
  double lp_upper_bound = 0.0;
  /// Every budget-feasible integral solution pays at least D.
  double integral_lower_bound = 0.0;
};

/// k clusters of M co-located old points (pairwise cluster distance 1), two
/// extra new points at distance D from each other and theta from the rest,
/// budget 2M - 1. Points c*M .. c*M + M - 1 form cluster c with center c*M;
/// the extra points are kM and kM + 1.
std::pair<ConsistentProblem, GapAnalysis> gap_instance(std::size_t k, std::size_t m, double distance);

struct GapDemo {
  GapAnalysis analysis;
  double lp_value = 0.0;
  double integral_opt = 0.0;
  double ratio = 0.0;
};

/// Solves the relaxation and the brute-force optimum on the gap instance.
GapDemo run_gap_demo(std::size_t k, std::size_t m, double distance);

std::string gap_demo_to_json(const GapDemo& demo, int indent = 2);

}  // namespace lcc
