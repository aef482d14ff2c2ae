#include "lcc/bundling.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

namespace lcc {

namespace {

constexpr double kShareEps = 1e-12;

bool is_old_center(const ConsistentProblem& problem, Index i) {
  const auto& c = problem.prior().centers;
  return std::binary_search(c.begin(), c.end(), i);
}

}  // namespace

BundleStructure filter_and_bundle(const ConsistentProblem& problem, const FractionalSolution& frac) {
  const std::size_t n = problem.size();
  BundleStructure out;
  out.dav = average_distances(problem, frac);

  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return out.dav[a] < out.dav[b]; });
  for (Index j : order) {
    bool admit = true;
    for (Index f : out.filtered) {
      const double dj = problem.d(j, f);
      if (dj < 4.0 * out.dav[j] || dj == 0.0) {
        admit = false;
        break;
      }
    }
    if (admit) out.filtered.push_back(j);
  }

  const std::size_t m = out.filtered.size();
  out.radius.assign(m, 0.0);
  for (std::size_t a = 0; a < m; ++a) {
    if (m == 1) {
      out.radius[a] = problem.metric().diameter();
      continue;
    }
    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t b = 0; b < m; ++b)
      if (a != b) nearest = std::min(nearest, problem.d(out.filtered[a], out.filtered[b]));
    out.radius[a] = nearest / 2.0;
  }

  // Each facility is claimed by its nearest filtered client (lowest point
  // index on ties) when it lies within that client's radius.
  std::vector<std::vector<Index>> claimed(m);
  std::vector<std::size_t> owner(n, kNoBundle);
  for (Index i = 0; i < n; ++i) {
    const bool old = is_old_center(problem, i);
    if (frac.y[i] <= kShareEps && !old) continue;
    std::size_t best = kNoBundle;
    for (std::size_t a = 0; a < m; ++a) {
      if (best == kNoBundle) {
        best = a;
        continue;
      }
      const double da = problem.d(i, out.filtered[a]);
      const double db = problem.d(i, out.filtered[best]);
      if (da < db || (da == db && out.filtered[a] < out.filtered[best])) best = a;
    }
    if (best != kNoBundle && frac.y[i] > kShareEps && problem.d(i, out.filtered[best]) <= out.radius[best]) {
      claimed[best].push_back(i);
      owner[i] = best;
    }
  }

  out.bundles.assign(m, {});
  out.volume.assign(m, 0.0);
  // Pieces left outside every bundle, per facility.
  std::vector<double> rest(n, 0.0);
  for (Index i = 0; i < n; ++i) rest[i] = owner[i] == kNoBundle ? frac.y[i] : 0.0;
  std::vector<double> taken(n, 0.0);

  for (std::size_t a = 0; a < m; ++a) {
    auto& cand = claimed[a];
    const Index j = out.filtered[a];
    std::stable_sort(cand.begin(), cand.end(), [&](Index x, Index y) { return problem.d(x, j) < problem.d(y, j); });
    std::vector<Index> members;
    double vol = 0.0;
    for (Index i : cand) {
      const double y = frac.y[i];
      if (!is_old_center(problem, i)) {
        const double piece = std::min(y, 1.0 - vol);
        if (piece > kShareEps) {
          taken[i] = piece;
          members.push_back(i);
          vol += piece;
        }
        rest[i] = y - std::max(piece, 0.0);
        continue;
      }
      double excess = vol + y - 1.0;
      if (excess > kShareEps) {
        double trimmable = 0.0;
        for (Index t : members)
          if (!is_old_center(problem, t)) trimmable += taken[t];
        if (trimmable + kShareEps < excess) {
          rest[i] = y;
          continue;
        }
        for (auto it = members.rbegin(); it != members.rend() && excess > kShareEps; ++it) {
          if (is_old_center(problem, *it)) continue;
          const double cut = std::min(taken[*it], excess);
          taken[*it] -= cut;
          rest[*it] += cut;
          vol -= cut;
          excess -= cut;
        }
        std::erase_if(members, [&](Index t) { return !is_old_center(problem, t) && taken[t] <= kShareEps; });
      }
      taken[i] = y;
      members.push_back(i);
      vol += y;
    }
    for (Index i : members) {
      out.bundles[a].push_back(out.copies.size());
      out.copies.push_back({i, taken[i], a});
    }
    out.volume[a] = vol;
  }
  for (Index i = 0; i < n; ++i) {
    const bool old = is_old_center(problem, i);
    if (old ? (owner[i] == kNoBundle || taken[i] == 0.0) : rest[i] > kShareEps) {
      out.copies.push_back({i, old ? frac.y[i] : rest[i], kNoBundle});
    }
  }

  std::vector<char> used(m, 0);
  std::size_t left = m;
  while (left >= 2) {
    std::size_t ba = 0, bb = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < m; ++a) {
      if (used[a]) continue;
      for (std::size_t b = a + 1; b < m; ++b) {
        if (used[b]) continue;
        const double dd = problem.d(out.filtered[a], out.filtered[b]);
        if (dd < best) {
          best = dd;
          ba = a;
          bb = b;
        }
      }
    }
    used[ba] = used[bb] = 1;
    out.matching.emplace_back(ba, bb);
    left -= 2;
  }
  for (std::size_t a = 0; a < m; ++a)
    if (!used[a]) out.unmatched = a;
  return out;
}

std::optional<std::string> audit_bundles(const ConsistentProblem& problem, const FractionalSolution& frac,
                                         const BundleStructure& b, double tol) {
  const std::size_t n = problem.size();
  const std::size_t m = b.filtered.size();
  std::vector<char> is_filtered(n, 0);
  for (Index j : b.filtered) is_filtered[j] = 1;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t c = a + 1; c < m; ++c) {
      const Index j = b.filtered[a], jj = b.filtered[c];
      if (problem.d(j, jj) + tol < 4.0 * std::max(b.dav[j], b.dav[jj]))
        return "filtered clients " + std::to_string(j) + " and " + std::to_string(jj) + " are too close";
    }
  for (Index jj = 0; jj < n; ++jj) {
    if (is_filtered[jj]) continue;
    bool covered = false;
    for (Index j : b.filtered)
      if (b.dav[j] <= b.dav[jj] + tol && problem.d(j, jj) <= 4.0 * b.dav[jj] + tol) covered = true;
    if (!covered) return "client " + std::to_string(jj) + " has no filtered witness";
  }
  std::vector<double> share(n, 0.0);
  for (const FacilityCopy& c : b.copies) {
    if (c.share < -tol) return "negative copy share";
    share[c.facility] += c.share;
  }
  for (Index i = 0; i < n; ++i)
    if (std::abs(share[i] - frac.y[i]) > tol) return "copies of facility " + std::to_string(i) + " do not sum to y";
  for (std::size_t a = 0; a < m; ++a) {
    const Index j = b.filtered[a];
    double vol = 0.0;
    for (std::size_t e : b.bundles[a]) {
      const FacilityCopy& c = b.copies[e];
      if (c.bundle != a) return "copy listed in a foreign bundle";
      if (problem.d(c.facility, j) > b.radius[a] + tol) return "bundle copy outside its ball";
      vol += c.share;
    }
    if (std::abs(vol - b.volume[a]) > tol) return "bundle volume bookkeeping mismatch";
    if (vol > 1.0 + tol) return "bundle of client " + std::to_string(j) + " exceeds volume 1";
    const double lower = b.radius[a] > 0.0 ? std::max(0.5, 1.0 - b.dav[j] / b.radius[a]) : 1.0;
    if (vol + tol < lower)
      return "bundle of client " + std::to_string(j) + " has volume " + std::to_string(vol) + " below " +
             std::to_string(lower);
  }
  std::vector<int> seen(m, 0);
  for (auto [a, c] : b.matching) {
    ++seen[a];
    ++seen[c];
  }
  std::size_t unmatched = 0;
  for (std::size_t a = 0; a < m; ++a) {
    if (seen[a] > 1) return "client matched twice";
    if (seen[a] == 0) ++unmatched;
  }
  if (unmatched > 1) return "more than one unmatched client";
  return std::nullopt;
}

}  // namespace lcc
