#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace lcc::lp {

enum class Sense { kLessEqual, kGreaterEqual, kEqual };

struct Row {
  std::vector<std::pair<std::size_t, double>> terms;
  Sense sense = Sense::kLessEqual;
  double rhs = 0.0;
};

/// minimize c.x subject to the rows and x >= 0.
struct Program {
  std::size_t num_vars = 0;
  std::vector<double> cost;
  std::vector<Row> rows;

  std::size_t add_row(std::vector<std::pair<std::size_t, double>> terms, Sense sense, double rhs);
};

enum class Status { kOptimal, kInfeasible, kUnbounded };

struct Result {
  Status status = Status::kInfeasible;
  /// A basic (vertex) solution when optimal.
  std::vector<double> x;
  double objective = 0.0;
  std::size_t iterations = 0;
};

struct Options {
  std::size_t max_iterations = 200'000;
  double tolerance = 1e-9;
  /// Consecutive degenerate pivots before pricing falls back to Bland's rule.
  std::size_t degenerate_streak = 32;
};

/// Dense two-phase tableau simplex. Dantzig pricing, switching to Bland's
/// smallest-index rule while pivots stall. Throws SolverError when the
/// iteration cap is hit.
Result solve(const Program& program, const Options& options = {});

}  // namespace lcc::lp
