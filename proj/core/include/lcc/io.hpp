#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "lcc/problem.hpp"

namespace lcc {

enum class InstanceFormat { kJson, kCsv };

struct LoadOptions {
  /// Center count for CSV input (JSON carries its own).
  std::size_t csv_k = 1;
  bool check_triangle = true;
  std::size_t table_cap = Metric::kDefaultTableCap;
};

/// Parses and validates an instance.
///
/// JSON: `{ "points": [[x,...],...] | "distances": [[...],...], "p1": [...],
///          "prior": {"centers": [...], "assign": {"<p1 index>": center}},
///          "S": int, "k": int }`
/// CSV: one Euclidean point per row (blank lines and `#` comments skipped);
/// P1 is empty, S = 0 and k comes from the options.
///
/// Throws ParseError on syntax/type problems and ValidationError on
/// invariant violations.
ConsistentProblem load_instance(std::istream& in, InstanceFormat format,
                                const LoadOptions& options = {});
ConsistentProblem load_instance_string(const std::string& text, InstanceFormat format,
                                       const LoadOptions& options = {});
/// Format chosen by extension (.csv -> CSV, anything else -> JSON).
ConsistentProblem load_instance_file(const std::filesystem::path& path,
                                     const LoadOptions& options = {});

std::string instance_to_json(const ConsistentProblem& problem, int indent = 1);
void save_instance_file(const ConsistentProblem& problem, const std::filesystem::path& path);

/// Same points, P1, prior, S and k, bit for bit.
bool same_instance(const ConsistentProblem& a, const ConsistentProblem& b);

}  // namespace lcc
