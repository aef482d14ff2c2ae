#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

namespace lcc {

using Index = std::size_t;

/// A finite metric over points 0..n-1, backed either by Euclidean
/// coordinates or by an explicit symmetric distance table.
///
/// Euclidean metrics materialize their full table once when n is at most
/// `table_cap`; larger ones compute distances on demand. Instances are
/// immutable and cheap to copy (storage is shared).
class Metric {
 public:
  static constexpr std::size_t kDefaultTableCap = 4096;

  Metric() = default;

  /// Points given row-wise; every row must have the same dimension.
  static Metric euclidean(std::vector<std::vector<double>> points,
                          std::size_t table_cap = kDefaultTableCap);

  /// Full n x n table. Validates symmetry, zero diagonal, nonnegativity and
  /// (unless `check_triangle` is false) the triangle inequality.
  static Metric explicit_table(std::vector<std::vector<double>> table,
                               bool check_triangle = true);

  std::size_t size() const noexcept { return n_; }
  bool is_euclidean() const noexcept { return coords_ != nullptr; }
  std::size_t dimension() const noexcept { return dim_; }

  double operator()(Index i, Index j) const noexcept {
    if (table_) return (*table_)[i * n_ + j];
    return coord_distance(i, j);
  }

  /// Coordinates of point i (Euclidean metrics only).
  std::vector<double> point(Index i) const;

  /// Row-major table (materializes on demand for large Euclidean input).
  std::vector<std::vector<double>> table() const;

  /// max nonzero distance / min nonzero distance; 1 when all distances are 0.
  double aspect_ratio() const;
  double diameter() const;

  /// The metric restricted to `subset` (indices renumbered 0..m-1).
  Metric restricted(const std::vector<Index>& subset) const;

  /// The underlying representation is the same and every distance agrees bit-for-bit.
  bool same_data(const Metric& other) const;

 private:
  double coord_distance(Index i, Index j) const noexcept;

  std::size_t n_ = 0;
  std::size_t dim_ = 0;
  std::shared_ptr<const std::vector<double>> coords_;  // n * dim, row-major
  std::shared_ptr<const std::vector<double>> table_;   // n * n, row-major
};

/// Shortest-path closure (Floyd-Warshall) turning a nonnegative symmetric
/// weight table into a metric.
std::vector<std::vector<double>> metric_closure(std::vector<std::vector<double>> table);

/// Returns the first (i, j, k) with d(i,k) > d(i,j) + d(j,k) beyond a relative
/// tolerance, if any.
struct TriangleViolation {
  Index i, j, k;
};
std::optional<TriangleViolation> find_triangle_violation(
    const std::vector<std::vector<double>>& table);

}  // namespace lcc
