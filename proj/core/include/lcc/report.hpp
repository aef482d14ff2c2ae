#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>

#include "lcc/problem.hpp"

namespace lcc {

enum class Objective { kCenter, kMedian };

const char* to_string(Objective objective) noexcept;

using MetaValue = std::variant<bool, std::int64_t, double, std::string>;
using Meta = std::map<std::string, MetaValue>;

/// The result of one algorithm run. objective_value and swcost always equal
/// the recomputation from `clustering` (make_report enforces it).
struct SolutionReport {
  std::string algorithm;
  Objective objective = Objective::kMedian;
  Clustering clustering;
  double objective_value = 0.0;
  std::size_t swcost = 0;
  std::size_t budget = 0;
  /// Only recorded when the caller asks for timing; keeps default reports
  /// byte-identical across runs.
  std::optional<double> wall_time_ms;
  Meta meta;
};

/// Validates the clustering against the problem (total assignment, at most
/// `max_centers` centers) and recomputes cost and swcost.
SolutionReport make_report(const ConsistentProblem& problem, Clustering clustering,
                           Objective objective, std::string algorithm, std::size_t max_centers);

/// Throws StructuralError if the report's numbers disagree with recomputation.
void verify_report(const ConsistentProblem& problem, const SolutionReport& report);

/// JSON serialization (stable field order).
std::string report_to_json(const SolutionReport& report, int indent = 2);

}  // namespace lcc
