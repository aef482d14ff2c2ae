#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "lcc/problem.hpp"

namespace lcc {

enum class Geometry { kEuclidean, kRandomMetric };
enum class BudgetPolicy { kFraction, kFixed };

struct CorpusSpec {
  std::size_t count = 10;
  std::size_t n_min = 6;
  std::size_t n_max = 12;
  std::size_t k_min = 1;
  std::size_t k_max = 3;
  BudgetPolicy budget_policy = BudgetPolicy::kFixed;
  /// kFraction: S = floor(fraction * |P1|).
  double budget_fraction = 0.2;
  /// kFixed: S drawn uniformly from these values (clamped to |P1|).
  std::vector<std::size_t> budget_values{0, 1, 2};
  Geometry geometry = Geometry::kEuclidean;
  std::size_t dimension = 2;
  std::uint64_t seed = 1;
};

/// Throws ValidationError on inconsistent ranges.
void validate_spec(const CorpusSpec& spec);

/// Instance i is drawn from child_seed(spec.seed, i). Euclidean points lie
/// on a 0.01 lattice in [0, 100)^d; random metrics close integer weights in
/// [1, 20] under shortest paths. P1 holds between a third and all but one
/// point; the prior opens up to k centers in P1 and assigns nearest
/// (one instance in five assigns at random).
std::vector<ConsistentProblem> generate_corpus(const CorpusSpec& spec);

/// Writes inst_0000.json, inst_0001.json, ... and returns the paths.
std::vector<std::filesystem::path> write_corpus(const std::vector<ConsistentProblem>& corpus,
                                                const std::filesystem::path& dir);

/// Loads every *.json file of a directory in name order.
std::vector<std::pair<std::string, ConsistentProblem>> load_corpus(const std::filesystem::path& dir);

struct IntroCounts {
  std::size_t left = 10;     // at -2
  std::size_t middle = 1000; // at 0
  std::size_t right = 10;    // at 2
  std::size_t far = 1;       // at 100
  std::size_t added = 1000;  // at 3, new
};

/// One-dimensional instance: the old points at -2, 0, 2, 100 with their
/// optimal two-center prior (centers at 0 and 100), plus a new group at 3.
ConsistentProblem intro_instance(const IntroCounts& counts, std::size_t budget, std::size_t k = 2);

/// Points of an insertion chain: the first `initial` points form step 0,
/// every later step appends `per_step` points.
struct Chain {
  std::vector<std::vector<double>> points;
  std::vector<std::size_t> sizes;
};

Chain incremental_chain(std::size_t initial, std::size_t per_step, std::size_t steps, std::size_t dimension,
                        std::uint64_t seed);

}  // namespace lcc
