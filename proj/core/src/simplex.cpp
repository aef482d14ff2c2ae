#include "lcc/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lcc/error.hpp"

namespace lcc::lp {

std::size_t Program::add_row(std::vector<std::pair<std::size_t, double>> terms, Sense sense, double rhs) {
  rows.push_back({std::move(terms), sense, rhs});
  return rows.size() - 1;
}

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

class Tableau {
 public:
  Tableau(const Program& p, const Options& opt) : opt_(opt), n_(p.num_vars) {
    if (p.cost.size() != n_) throw SolverError("cost vector size mismatch");
    m_ = p.rows.size();
    std::size_t slacks = 0;
    std::size_t artificials = 0;
    std::vector<char> flip(m_, 0);
    for (std::size_t i = 0; i < m_; ++i) {
      Sense s = p.rows[i].sense;
      if (p.rows[i].rhs < 0) {
        flip[i] = 1;
        if (s == Sense::kLessEqual) s = Sense::kGreaterEqual;
        else if (s == Sense::kGreaterEqual) s = Sense::kLessEqual;
      }
      if (s != Sense::kEqual) ++slacks;
      if (s != Sense::kLessEqual) ++artificials;
    }
    first_art_ = n_ + slacks;
    cols_ = first_art_ + artificials;
    width_ = cols_ + 1;
    a_.assign(m_ * width_, 0.0);
    basis_.assign(m_, kNone);
    std::size_t next_slack = n_;
    std::size_t next_art = first_art_;
    for (std::size_t i = 0; i < m_; ++i) {
      const Row& row = p.rows[i];
      const double sign = flip[i] ? -1.0 : 1.0;
      for (auto [j, v] : row.terms) {
        if (j >= n_) throw SolverError("row references an unknown variable");
        at(i, j) += sign * v;
      }
      rhs(i) = sign * row.rhs;
      Sense s = row.sense;
      if (flip[i] && s != Sense::kEqual) s = s == Sense::kLessEqual ? Sense::kGreaterEqual : Sense::kLessEqual;
      if (s == Sense::kLessEqual) {
        at(i, next_slack) = 1.0;
        basis_[i] = next_slack++;
      } else {
        if (s == Sense::kGreaterEqual) at(i, next_slack++) = -1.0;
        at(i, next_art) = 1.0;
        basis_[i] = next_art++;
      }
    }
    cost_.assign(cols_, 0.0);
    for (std::size_t j = 0; j < n_; ++j) cost_[j] = p.cost[j];
  }

  Result run() {
    Result res;
    if (cols_ > first_art_) {
      std::vector<double> phase1(cols_, 0.0);
      for (std::size_t j = first_art_; j < cols_; ++j) phase1[j] = 1.0;
      if (!optimize(phase1, cols_)) throw SolverError("phase one cannot be unbounded");
      if (objective_value(phase1) > opt_.tolerance * std::max<double>(1.0, static_cast<double>(m_))) {
        res.status = Status::kInfeasible;
        res.iterations = iterations_;
        return res;
      }
      drive_out_artificials();
    }
    if (!optimize(cost_, first_art_)) {
      res.status = Status::kUnbounded;
      res.iterations = iterations_;
      return res;
    }
    res.status = Status::kOptimal;
    res.x.assign(n_, 0.0);
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] < n_) res.x[basis_[i]] = std::max(0.0, rhs(i));
    for (std::size_t j = 0; j < n_; ++j) res.objective += cost_[j] * res.x[j];
    res.iterations = iterations_;
    return res;
  }

 private:
  double& at(std::size_t i, std::size_t j) { return a_[i * width_ + j]; }
  double& rhs(std::size_t i) { return a_[i * width_ + cols_]; }

  double objective_value(const std::vector<double>& c) {
    double v = 0.0;
    for (std::size_t i = 0; i < m_; ++i) v += c[basis_[i]] * rhs(i);
    return v;
  }

  void pivot(std::size_t r, std::size_t c) {
    double* prow = &a_[r * width_];
    const double inv = 1.0 / prow[c];
    for (std::size_t j = 0; j < width_; ++j) prow[j] *= inv;
    prow[c] = 1.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      double* row = &a_[i * width_];
      const double f = row[c];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < width_; ++j) row[j] -= f * prow[j];
      row[c] = 0.0;
    }
    basis_[r] = c;
    ++iterations_;
  }

  // Minimizes c over columns [0, allowed). Returns false if unbounded.
  bool optimize(const std::vector<double>& c, std::size_t allowed) {
    std::vector<double> reduced(cols_);
    std::size_t stalled = 0;
    while (true) {
      if (iterations_ >= opt_.max_iterations) throw SolverError("simplex iteration cap exceeded");
      for (std::size_t j = 0; j < cols_; ++j) reduced[j] = c[j];
      for (std::size_t i = 0; i < m_; ++i) {
        const double cb = c[basis_[i]];
        if (cb == 0.0) continue;
        const double* row = &a_[i * width_];
        for (std::size_t j = 0; j < cols_; ++j) reduced[j] -= cb * row[j];
      }
      const bool bland = stalled >= opt_.degenerate_streak;
      std::size_t enter = kNone;
      double best = -opt_.tolerance;
      for (std::size_t j = 0; j < allowed; ++j) {
        if (reduced[j] < best) {
          enter = j;
          if (bland) break;
          best = reduced[j];
        }
      }
      if (enter == kNone) return true;
      std::size_t leave = kNone;
      double ratio = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m_; ++i) {
        const double v = at(i, enter);
        if (v <= opt_.tolerance) continue;
        const double q = std::max(0.0, rhs(i)) / v;
        if (leave == kNone || q < ratio - 1e-12) {
          ratio = q;
          leave = i;
        } else if (q <= ratio + 1e-12 && basis_[i] < basis_[leave]) {
          ratio = std::min(ratio, q);
          leave = i;
        }
      }
      if (leave == kNone) return false;
      stalled = ratio <= opt_.tolerance ? stalled + 1 : 0;
      pivot(leave, enter);
    }
  }

  void drive_out_artificials() {
    std::vector<char> keep(m_, 1);
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < first_art_) continue;
      std::size_t col = kNone;
      double best = 1e-7;
      for (std::size_t j = 0; j < first_art_; ++j) {
        if (std::abs(at(i, j)) > best) {
          best = std::abs(at(i, j));
          col = j;
        }
      }
      if (col == kNone) {
        keep[i] = 0;  // redundant row
      } else {
        pivot(i, col);
      }
    }
    std::vector<double> compact;
    std::vector<std::size_t> basis;
    for (std::size_t i = 0; i < m_; ++i) {
      if (!keep[i]) continue;
      compact.insert(compact.end(), a_.begin() + static_cast<std::ptrdiff_t>(i * width_),
                     a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * width_));
      basis.push_back(basis_[i]);
    }
    a_ = std::move(compact);
    basis_ = std::move(basis);
    m_ = basis_.size();
  }

  Options opt_;
  std::size_t n_ = 0;
  std::size_t m_ = 0;
  std::size_t first_art_ = 0;
  std::size_t cols_ = 0;
  std::size_t width_ = 0;
  std::vector<double> a_;
  std::vector<std::size_t> basis_;
  std::vector<double> cost_;
  std::size_t iterations_ = 0;
};

}  // namespace

Result solve(const Program& program, const Options& options) {
  return Tableau(program, options).run();
}

}  // namespace lcc::lp
