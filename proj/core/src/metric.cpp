#include "lcc/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "lcc/error.hpp"

namespace lcc {

namespace {

constexpr double kTriangleRelTol = 1e-9;

}  // namespace

Metric Metric::euclidean(std::vector<std::vector<double>> points, std::size_t table_cap) {
  Metric m;
  m.n_ = points.size();
  m.dim_ = points.empty() ? 0 : points.front().size();
  auto coords = std::make_shared<std::vector<double>>();
  coords->reserve(m.n_ * m.dim_);
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != m.dim_) {
      std::ostringstream os;
      os << "point " << i << " has dimension " << points[i].size() << ", expected " << m.dim_;
      throw ValidationError(os.str());
    }
    for (double x : points[i]) {
      if (!std::isfinite(x)) {
        throw ValidationError("point " + std::to_string(i) + " has a non-finite coordinate");
      }
      coords->push_back(x);
    }
  }
  m.coords_ = std::move(coords);
  if (m.n_ <= table_cap) {
    auto table = std::make_shared<std::vector<double>>(m.n_ * m.n_, 0.0);
    for (Index i = 0; i < m.n_; ++i) {
      for (Index j = i + 1; j < m.n_; ++j) {
        const double d = m.coord_distance(i, j);
        (*table)[i * m.n_ + j] = d;
        (*table)[j * m.n_ + i] = d;
      }
    }
    m.table_ = std::move(table);
  }
  return m;
}

Metric Metric::explicit_table(std::vector<std::vector<double>> table, bool check_triangle) {
  const std::size_t n = table.size();
  for (Index i = 0; i < n; ++i) {
    if (table[i].size() != n) {
      throw ValidationError("distance row " + std::to_string(i) + " has length " +
                            std::to_string(table[i].size()) + ", expected " + std::to_string(n));
    }
  }
  for (Index i = 0; i < n; ++i) {
    if (table[i][i] != 0.0) {
      throw ValidationError("d(" + std::to_string(i) + "," + std::to_string(i) + ") is not zero");
    }
    for (Index j = 0; j < n; ++j) {
      const double d = table[i][j];
      if (!std::isfinite(d) || d < 0.0) {
        throw ValidationError("d(" + std::to_string(i) + "," + std::to_string(j) +
                              ") is negative or not finite");
      }
      if (d != table[j][i]) {
        throw ValidationError("distance table is not symmetric at (" + std::to_string(i) + "," +
                              std::to_string(j) + ")");
      }
    }
  }
  if (check_triangle) {
    if (auto v = find_triangle_violation(table)) {
      std::ostringstream os;
      os << "triangle inequality violated: d(" << v->i << "," << v->k << ") > d(" << v->i << ","
         << v->j << ") + d(" << v->j << "," << v->k << ") for (i,j,k) = (" << v->i << "," << v->j
         << "," << v->k << ")";
      throw ValidationError(os.str());
    }
  }
  Metric m;
  m.n_ = n;
  auto flat = std::make_shared<std::vector<double>>(n * n);
  for (Index i = 0; i < n; ++i) std::copy(table[i].begin(), table[i].end(), flat->begin() + i * n);
  m.table_ = std::move(flat);
  return m;
}

double Metric::coord_distance(Index i, Index j) const noexcept {
  const double* a = coords_->data() + i * dim_;
  const double* b = coords_->data() + j * dim_;
  double acc = 0.0;
  for (std::size_t c = 0; c < dim_; ++c) {
    const double diff = a[c] - b[c];
    acc += diff * diff;
  }
  return std::sqrt(acc);
}

std::vector<double> Metric::point(Index i) const {
  if (!coords_) throw StructuralError("metric has no coordinates");
  if (i >= n_) throw StructuralError("point index out of range");
  return {coords_->begin() + i * dim_, coords_->begin() + (i + 1) * dim_};
}

std::vector<std::vector<double>> Metric::table() const {
  std::vector<std::vector<double>> out(n_, std::vector<double>(n_, 0.0));
  for (Index i = 0; i < n_; ++i)
    for (Index j = 0; j < n_; ++j) out[i][j] = (*this)(i, j);
  return out;
}

double Metric::aspect_ratio() const {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (Index i = 0; i < n_; ++i) {
    for (Index j = i + 1; j < n_; ++j) {
      const double d = (*this)(i, j);
      if (d > 0.0) {
        lo = std::min(lo, d);
        hi = std::max(hi, d);
      }
    }
  }
  return hi > 0.0 ? hi / lo : 1.0;
}

double Metric::diameter() const {
  double hi = 0.0;
  for (Index i = 0; i < n_; ++i)
    for (Index j = i + 1; j < n_; ++j) hi = std::max(hi, (*this)(i, j));
  return hi;
}

Metric Metric::restricted(const std::vector<Index>& subset) const {
  if (coords_) {
    std::vector<std::vector<double>> pts;
    pts.reserve(subset.size());
    for (Index i : subset) pts.push_back(point(i));
    return euclidean(std::move(pts));
  }
  std::vector<std::vector<double>> t(subset.size(), std::vector<double>(subset.size()));
  for (std::size_t a = 0; a < subset.size(); ++a)
    for (std::size_t b = 0; b < subset.size(); ++b) t[a][b] = (*this)(subset[a], subset[b]);
  return explicit_table(std::move(t), false);
}

bool Metric::same_data(const Metric& other) const {
  if (n_ != other.n_ || is_euclidean() != other.is_euclidean() || dim_ != other.dim_) return false;
  if (coords_) return *coords_ == *other.coords_;
  for (Index i = 0; i < n_; ++i)
    for (Index j = 0; j < n_; ++j)
      if ((*this)(i, j) != other(i, j)) return false;
  return true;
}

std::vector<std::vector<double>> metric_closure(std::vector<std::vector<double>> table) {
  const std::size_t n = table.size();
  for (Index k = 0; k < n; ++k)
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j)
        if (table[i][k] + table[k][j] < table[i][j]) table[i][j] = table[i][k] + table[k][j];
  return table;
}

std::optional<TriangleViolation> find_triangle_violation(
    const std::vector<std::vector<double>>& table) {
  const std::size_t n = table.size();
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      for (Index k = 0; k < n; ++k) {
        const double via = table[i][j] + table[j][k];
        if (table[i][k] > via + kTriangleRelTol * std::max(1.0, via)) return TriangleViolation{i, j, k};
      }
    }
  }
  return std::nullopt;
}

}  // namespace lcc
