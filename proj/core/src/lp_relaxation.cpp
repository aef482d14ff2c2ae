#include "lcc/lp_relaxation.hpp"

#include <algorithm>
#include <cmath>

#include "lcc/error.hpp"
#include "lcc/simplex.hpp"

namespace lcc {

namespace {

double snap(double v) {
  if (std::abs(v) < 1e-9) return 0.0;
  if (std::abs(v - 1.0) < 1e-9) return 1.0;
  return std::clamp(v, 0.0, 1.0);
}

}  // namespace

std::optional<FractionalSolution> solve_lp(const ConsistentProblem& problem, const FixedOpenings& fixed) {
  const std::size_t n = problem.size();
  if (!fixed.empty() && fixed.size() != n) throw ValidationError("fixed openings size mismatch");
  lp::Program prog;
  prog.num_vars = n + n * n;
  prog.cost.assign(prog.num_vars, 0.0);
  auto xv = [n](Index i, Index j) { return n + i * n + j; };
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) prog.cost[xv(i, j)] = problem.d(i, j);

  for (Index j = 0; j < n; ++j) {
    std::vector<std::pair<std::size_t, double>> terms;
    for (Index i = 0; i < n; ++i) terms.emplace_back(xv(i, j), 1.0);
    prog.add_row(std::move(terms), lp::Sense::kEqual, 1.0);
  }
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) prog.add_row({{xv(i, j), 1.0}, {i, -1.0}}, lp::Sense::kLessEqual, 0.0);
  {
    std::vector<std::pair<std::size_t, double>> terms;
    for (Index i = 0; i < n; ++i) terms.emplace_back(i, 1.0);
    prog.add_row(std::move(terms), lp::Sense::kLessEqual, static_cast<double>(problem.k()));
  }
  if (!problem.prior().centers.empty()) {
    std::vector<std::pair<std::size_t, double>> terms;
    double total = 0.0;
    for (Index c : problem.prior().centers) {
      const auto w = static_cast<double>(problem.prior_weight(c));
      terms.emplace_back(c, w);
      total += w;
    }
    prog.add_row(std::move(terms), lp::Sense::kGreaterEqual, total - static_cast<double>(problem.budget()));
  }
  for (Index i = 0; i < n; ++i) {
    if (!fixed.empty() && fixed[i]) {
      prog.add_row({{i, 1.0}}, lp::Sense::kEqual, *fixed[i]);
    } else {
      prog.add_row({{i, 1.0}}, lp::Sense::kLessEqual, 1.0);
    }
  }

  const lp::Result res = lp::solve(prog);
  if (res.status == lp::Status::kInfeasible) return std::nullopt;
  if (res.status != lp::Status::kOptimal) throw SolverError("relaxation is unbounded");
  FractionalSolution frac;
  frac.n = n;
  frac.y.resize(n);
  frac.x.resize(n * n);
  for (Index i = 0; i < n; ++i) frac.y[i] = snap(res.x[i]);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) frac.x[i * n + j] = snap(res.x[xv(i, j)]);
  frac.objective = res.objective;
  frac.iterations = res.iterations;
  return frac;
}

FractionalSolution solve_lp(const ConsistentProblem& problem) {
  auto frac = solve_lp(problem, FixedOpenings{});
  if (!frac) throw SolverError("relaxation reported infeasible on a valid problem");
  return std::move(*frac);
}

std::vector<double> average_distances(const ConsistentProblem& problem, const FractionalSolution& frac) {
  std::vector<double> dav(frac.n, 0.0);
  for (Index j = 0; j < frac.n; ++j)
    for (Index i = 0; i < frac.n; ++i) dav[j] += frac.assign(i, j) * problem.d(i, j);
  return dav;
}

double fractional_switching(const ConsistentProblem& problem, const std::vector<double>& y) {
  double total = 0.0;
  for (Index c : problem.prior().centers) total += (1.0 - y[c]) * static_cast<double>(problem.prior_weight(c));
  return total;
}

}  // namespace lcc
