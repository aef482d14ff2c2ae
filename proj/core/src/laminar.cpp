#include "lcc/laminar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lcc/error.hpp"

namespace lcc {

namespace {

constexpr double kTight = 1e-7;

double lhs(const LaminarConstraint& c, const std::vector<double>& z) {
  double v = 0.0;
  for (std::size_t e : c.members) v += z[e];
  return v;
}

bool satisfied(const LaminarConstraint& c, double value, double tol) {
  switch (c.sense) {
    case lp::Sense::kLessEqual: return value <= c.rhs + tol;
    case lp::Sense::kGreaterEqual: return value >= c.rhs - tol;
    case lp::Sense::kEqual: return std::abs(value - c.rhs) <= tol;
  }
  return false;
}

bool family_laminar(const std::vector<const LaminarConstraint*>& sets) {
  for (std::size_t a = 0; a < sets.size(); ++a)
    for (std::size_t b = a + 1; b < sets.size(); ++b) {
      const auto& x = sets[a]->members;
      const auto& y = sets[b]->members;
      std::vector<std::size_t> common;
      std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(common));
      if (!common.empty() && common.size() != x.size() && common.size() != y.size()) return false;
    }
  return true;
}

}  // namespace

LaminarPolytope build_laminar(const ConsistentProblem& problem, const FractionalSolution& frac,
                              const BundleStructure& bundles) {
  (void)frac;
  LaminarPolytope poly;
  poly.copies = bundles.copies;
  const std::size_t e = poly.copies.size();
  poly.point.resize(e);
  for (std::size_t i = 0; i < e; ++i) poly.point[i] = poly.copies[i].share;

  std::vector<std::size_t> all(e);
  for (std::size_t i = 0; i < e; ++i) all[i] = i;
  poly.constraints.push_back({LaminarKind::kGlobalUpper, all, lp::Sense::kLessEqual, static_cast<double>(problem.k())});
  poly.constraints.push_back({LaminarKind::kGlobalLower, all, lp::Sense::kGreaterEqual, 1.0});
  for (const auto& b : bundles.bundles) {
    std::vector<std::size_t> m = b;
    std::sort(m.begin(), m.end());
    if (!m.empty()) poly.constraints.push_back({LaminarKind::kBundle, m, lp::Sense::kLessEqual, 1.0});
  }
  for (auto [a, c] : bundles.matching) {
    std::vector<std::size_t> m = bundles.bundles[a];
    m.insert(m.end(), bundles.bundles[c].begin(), bundles.bundles[c].end());
    std::sort(m.begin(), m.end());
    poly.constraints.push_back({LaminarKind::kPair, m, lp::Sense::kGreaterEqual, 1.0});
  }

  std::vector<std::size_t> copy_of(problem.size(), kNoBundle);
  for (std::size_t i = 0; i < e; ++i)
    if (std::binary_search(problem.prior().centers.begin(), problem.prior().centers.end(), poly.copies[i].facility))
      copy_of[poly.copies[i].facility] = i;
  std::vector<std::size_t> prefix;
  double closed = 0.0;
  std::size_t ell = 0;
  for (Index c : problem.centers_by_weight()) {
    if (copy_of[c] == kNoBundle) throw StructuralError("C1 facility without a copy");
    poly.c1_order.push_back(copy_of[c]);
    prefix.push_back(copy_of[c]);
    closed += 1.0 - poly.point[copy_of[c]];
    ++ell;
    std::vector<std::size_t> m = prefix;
    std::sort(m.begin(), m.end());
    const double cap = std::ceil(closed - kTight);
    poly.constraints.push_back(
        {LaminarKind::kPrefix, std::move(m), lp::Sense::kGreaterEqual, static_cast<double>(ell) - std::max(0.0, cap)});
  }
  return poly;
}

std::optional<std::string> polytope_violation(const LaminarPolytope& poly, const std::vector<double>& z, double tol) {
  if (z.size() != poly.copies.size()) return "point dimension mismatch";
  for (std::size_t e = 0; e < z.size(); ++e)
    if (z[e] < -tol || z[e] > 1.0 + tol) return "box violated at copy " + std::to_string(e);
  static const char* names[] = {"global upper", "global lower", "bundle", "pair", "prefix"};
  for (std::size_t i = 0; i < poly.constraints.size(); ++i) {
    const auto& c = poly.constraints[i];
    if (!satisfied(c, lhs(c, z), tol)) return std::string(names[static_cast<int>(c.kind)]) + " constraint " + std::to_string(i) + " violated";
  }
  return std::nullopt;
}

bool families_are_laminar(const LaminarPolytope& poly) {
  std::vector<const LaminarConstraint*> first, second;
  for (const auto& c : poly.constraints) (c.kind == LaminarKind::kPrefix ? second : first).push_back(&c);
  return family_laminar(first) && family_laminar(second);
}

Decomposition decompose(const LaminarPolytope& poly, std::uint64_t seed) {
  const std::size_t e = poly.copies.size();
  Decomposition out;
  Rng rng(seed);
  std::vector<double> z = poly.point;
  double remaining = 1.0;
  for (std::size_t step = 0; step <= e + 2; ++step) {
    lp::Program prog;
    prog.num_vars = e;
    prog.cost.resize(e);
    for (double& c : prog.cost) c = rng.uniform(-1.0, 1.0);
    for (const auto& c : poly.constraints) {
      std::vector<std::pair<std::size_t, double>> terms;
      for (std::size_t m : c.members) terms.emplace_back(m, 1.0);
      const bool tight = std::abs(lhs(c, z) - c.rhs) <= kTight;
      prog.add_row(std::move(terms), tight ? lp::Sense::kEqual : c.sense, c.rhs);
    }
    for (std::size_t i = 0; i < e; ++i) {
      if (z[i] <= kTight) {
        prog.add_row({{i, 1.0}}, lp::Sense::kEqual, 0.0);
      } else if (z[i] >= 1.0 - kTight) {
        prog.add_row({{i, 1.0}}, lp::Sense::kEqual, 1.0);
      } else {
        prog.add_row({{i, 1.0}}, lp::Sense::kLessEqual, 1.0);
      }
    }
    const lp::Result res = lp::solve(prog);
    if (res.status != lp::Status::kOptimal) throw SolverError("face of the laminar polytope is empty");
    std::vector<std::uint8_t> v(e);
    std::vector<double> vd(e);
    for (std::size_t i = 0; i < e; ++i) {
      const double r = std::round(res.x[i]);
      if (std::abs(res.x[i] - r) > 1e-6 || r < 0.0 || r > 1.0)
        throw SolverError("non-integral vertex in the laminar polytope");
      v[i] = static_cast<std::uint8_t>(r);
      vd[i] = r;
    }
    double gap = 0.0;
    for (std::size_t i = 0; i < e; ++i) gap = std::max(gap, std::abs(z[i] - vd[i]));
    if (gap <= 1e-9) {
      out.vertices.push_back(std::move(v));
      out.lambda.push_back(remaining);
      return out;
    }
    // Largest theta keeping v + theta (z - v) feasible.
    double theta = std::numeric_limits<double>::infinity();
    auto limit = [&](double at_v, double slope, double lo, double hi) {
      if (slope > 1e-12 && hi < std::numeric_limits<double>::infinity()) theta = std::min(theta, (hi - at_v) / slope);
      if (slope < -1e-12 && lo > -std::numeric_limits<double>::infinity()) theta = std::min(theta, (lo - at_v) / slope);
    };
    for (std::size_t i = 0; i < e; ++i) limit(vd[i], z[i] - vd[i], 0.0, 1.0);
    constexpr double kInf = std::numeric_limits<double>::infinity();
    for (const auto& c : poly.constraints) {
      const double at_v = lhs(c, vd);
      const double slope = lhs(c, z) - at_v;
      const double lo = c.sense == lp::Sense::kLessEqual ? -kInf : c.rhs;
      const double hi = c.sense == lp::Sense::kGreaterEqual ? kInf : c.rhs;
      limit(at_v, slope, lo, hi);
    }
    if (!(theta > 1.0 + 1e-12) || !std::isfinite(theta)) throw SolverError("face walk stalled");
    out.vertices.push_back(std::move(v));
    out.lambda.push_back(remaining * (1.0 - 1.0 / theta));
    remaining /= theta;
    for (std::size_t i = 0; i < e; ++i) {
      z[i] = vd[i] + theta * (z[i] - vd[i]);
      if (std::abs(z[i]) < 1e-12) z[i] = 0.0;
      if (std::abs(z[i] - 1.0) < 1e-12) z[i] = 1.0;
    }
  }
  throw SolverError("face walk did not terminate");
}

std::vector<Index> vertex_centers(const LaminarPolytope& poly, const std::vector<std::uint8_t>& vertex) {
  std::vector<Index> centers;
  for (std::size_t i = 0; i < vertex.size(); ++i)
    if (vertex[i]) centers.push_back(poly.copies[i].facility);
  std::sort(centers.begin(), centers.end());
  centers.erase(std::unique(centers.begin(), centers.end()), centers.end());
  return centers;
}

}  // namespace lcc
