#include "lcc/tree_dp.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <limits>

#include "lcc/error.hpp"

namespace lcc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Routes every representative under `id` to `center`.
void route_subtree(const TreeEmbedding& tree, int id, std::size_t center,
                   std::vector<std::size_t>& center_of) {
  for (std::size_t r : tree.reps_under(id)) center_of[r] = center;
}

// Lowest P2 index among opened representatives.
std::size_t canonical_center(const WeightedInstance& weighted, const std::vector<std::size_t>& opened) {
  std::size_t best = opened.front();
  for (std::size_t r : opened)
    if (weighted.reps[r].point < weighted.reps[best].point) best = r;
  return best;
}

TreeSolution finish(const TreeEmbedding& tree, const WeightedInstance& weighted,
                    std::vector<std::size_t> open, std::vector<std::size_t> center_of, double dp_value) {
  TreeSolution sol;
  std::sort(open.begin(), open.end());
  sol.open = std::move(open);
  sol.center_of = std::move(center_of);
  sol.dp_value = dp_value;
  sol.tree_cost = tree_solution_cost(tree, weighted, sol.center_of);
  sol.switching = tree_solution_switching(weighted, sol.open);
  return sol;
}

void check_inputs(const TreeEmbedding& tree, const WeightedInstance& weighted, std::size_t k) {
  if (k == 0) throw ValidationError("k must be positive");
  if (tree.leaf_count() != weighted.size())
    throw StructuralError("tree leaves do not match the representatives");
  for (const TreeNode& nd : tree.nodes()) {
    if (!nd.is_leaf()) continue;
    const Representative& rep = weighted.reps[static_cast<std::size_t>(nd.rep)];
    if (nd.weight != rep.weight || nd.old_weight != (rep.is_old() ? rep.weight : 0))
      throw StructuralError("tree leaf weights do not match the representatives");
  }
}

// ---------------------------------------------------------------- exact

enum class Move : std::uint8_t { kNone, kLeaf, kLeftOut, kRightOut, kSplit };

struct ExactCell {
  double cost = kInf;
  Move move = Move::kNone;
  std::uint32_t kappa = 0;
  std::uint32_t s = 0;
};

class ExactDp {
 public:
  ExactDp(const TreeEmbedding& tree, const WeightedInstance& weighted, std::size_t k, std::size_t budget)
      : tree_(tree), weighted_(weighted), k_(k), budget_(budget),
        table_(tree.nodes().size() * (k + 1) * (budget + 1)) {}

  TreeSolution run() {
    for (int id : tree_.post_order()) fill(id);
    const ExactCell& top = cell(tree_.root(), k_, budget_);
    if (top.cost == kInf) throw SolverError("no feasible tree solution");
    std::vector<std::size_t> open;
    std::vector<std::size_t> center_of(weighted_.size(), 0);
    rebuild(tree_.root(), k_, budget_, open, center_of);
    return finish(tree_, weighted_, std::move(open), std::move(center_of), top.cost);
  }

 private:
  ExactCell& cell(int id, std::size_t kappa, std::size_t s) {
    return table_[(static_cast<std::size_t>(id) * (k_ + 1) + kappa) * (budget_ + 1) + s];
  }

  void fill(int id) {
    const TreeNode& nd = tree_.node(id);
    if (nd.is_leaf()) {
      for (std::size_t kappa = 1; kappa <= k_; ++kappa)
        for (std::size_t s = 0; s <= budget_; ++s) cell(id, kappa, s) = {0.0, Move::kLeaf, 1, 0};
      return;
    }
    const TreeNode& l = tree_.node(nd.left);
    const TreeNode& r = tree_.node(nd.right);
    const double out_l = static_cast<double>(l.weight) * nd.label;
    const double out_r = static_cast<double>(r.weight) * nd.label;
    for (std::size_t kappa = 1; kappa <= k_; ++kappa) {
      for (std::size_t s = 0; s <= budget_; ++s) {
        ExactCell best;
        auto offer = [&](double cost, Move move, std::size_t kp, std::size_t sp) {
          if (cost < best.cost) {
            best = {cost, move, static_cast<std::uint32_t>(kp), static_cast<std::uint32_t>(sp)};
          }
        };
        if (l.old_weight <= s) offer(cell(nd.right, kappa, s - l.old_weight).cost + out_l, Move::kLeftOut, kappa, s - l.old_weight);
        if (r.old_weight <= s) offer(cell(nd.left, kappa, s - r.old_weight).cost + out_r, Move::kRightOut, kappa, s - r.old_weight);
        for (std::size_t kp = 1; kp < kappa; ++kp) {
          for (std::size_t sp = 0; sp <= s; ++sp) {
            const double a = cell(nd.left, kp, sp).cost;
            if (a == kInf) continue;
            offer(a + cell(nd.right, kappa - kp, s - sp).cost, Move::kSplit, kp, sp);
          }
        }
        cell(id, kappa, s) = best;
      }
    }
#ifndef NDEBUG
    for (std::size_t kappa = 1; kappa <= k_; ++kappa)
      for (std::size_t s = 0; s <= budget_; ++s) {
        if (kappa > 1) assert(cell(id, kappa, s).cost <= cell(id, kappa - 1, s).cost);
        if (s > 0) assert(cell(id, kappa, s).cost <= cell(id, kappa, s - 1).cost);
      }
#endif
  }

  // Returns the opened representatives of the subtree.
  std::vector<std::size_t> rebuild(int id, std::size_t kappa, std::size_t s, std::vector<std::size_t>& open,
                                   std::vector<std::size_t>& center_of) {
    const TreeNode& nd = tree_.node(id);
    const ExactCell c = cell(id, kappa, s);
    switch (c.move) {
      case Move::kLeaf: {
        const auto rep = static_cast<std::size_t>(nd.rep);
        open.push_back(rep);
        center_of[rep] = rep;
        return {rep};
      }
      case Move::kLeftOut:
      case Move::kRightOut: {
        const bool left_out = c.move == Move::kLeftOut;
        auto inner = rebuild(left_out ? nd.right : nd.left, c.kappa, c.s, open, center_of);
        route_subtree(tree_, left_out ? nd.left : nd.right, canonical_center(weighted_, inner), center_of);
        return inner;
      }
      case Move::kSplit: {
        auto a = rebuild(nd.left, c.kappa, c.s, open, center_of);
        auto b = rebuild(nd.right, kappa - c.kappa, s - c.s, open, center_of);
        a.insert(a.end(), b.begin(), b.end());
        return a;
      }
      case Move::kNone:
        break;
    }
    throw SolverError("exact DP backtracking reached an empty cell");
  }

  const TreeEmbedding& tree_;
  const WeightedInstance& weighted_;
  std::size_t k_;
  std::size_t budget_;
  std::vector<ExactCell> table_;
};

// -------------------------------------------------------------- rounded

struct FrontierEntry {
  std::uint32_t grid = 0;
  std::size_t switching = 0;
  Move move = Move::kNone;
  bool inherited = false;  // taken from the j - 1 frontier of the same node
  std::uint32_t kappa = 0;
  std::uint32_t a = 0;
  std::uint32_t b = 0;
};

using Frontier = std::vector<FrontierEntry>;

class RoundedDp {
 public:
  RoundedDp(const TreeEmbedding& tree, const WeightedInstance& weighted, std::size_t k, std::size_t budget,
            const RoundedDpOptions& options)
      : tree_(tree), weighted_(weighted), k_(k), budget_(budget), options_(options),
        frontiers_(tree.nodes().size() * (k + 1)) {
    double max_label = 0.0;
    for (const TreeNode& nd : tree.nodes()) {
      if (nd.label > 0.0 && (unit_ == 0.0 || nd.label < unit_)) unit_ = nd.label;
      max_label = std::max(max_label, nd.label);
    }
    if (unit_ == 0.0) unit_ = 1.0;
    epsilon_ = options.epsilon.value_or(1.0 / (101.0 * std::max(1, tree.depth())));
    if (!(epsilon_ > 0.0)) throw ValidationError("grid ratio must be positive");
    // Twice the largest possible tree cost absorbs the compounded rounding.
    const double lambda = 2.0 * static_cast<double>(weighted.total_weight) * max_label / unit_;
    grid_.push_back(0.0);
    grid_.push_back(1.0);
    const double ratio = 1.0 + epsilon_;
    double v = 1.0;
    while (v < lambda) {
      v *= ratio;
      grid_.push_back(v);
    }
  }

  TreeSolution run(RoundedDpInfo* info) {
    for (int id : tree_.post_order()) fill(id);
    const Frontier& top = frontier(tree_.root(), k_);
    if (top.empty()) throw SolverError("no grid value meets the switching budget");
    std::vector<std::size_t> open;
    std::vector<std::size_t> center_of(weighted_.size(), 0);
    rebuild(tree_.root(), k_, 0, open, center_of);
    if (info != nullptr) {
      info->epsilon = epsilon_;
      info->grid_size = grid_.size();
      info->grid_index = top.front().grid;
      info->max_frontier = max_frontier_;
    }
    return finish(tree_, weighted_, std::move(open), std::move(center_of), grid_[top.front().grid] * unit_);
  }

 private:
  Frontier& frontier(int id, std::size_t j) { return frontiers_[static_cast<std::size_t>(id) * (k_ + 1) + j]; }

  // Smallest grid index with value >= x (x >= 0).
  std::uint32_t ceil_index(double x) const {
    auto it = std::lower_bound(grid_.begin(), grid_.end(), x);
    if (it == grid_.end()) throw SolverError("connection cost exceeds the rounding grid");
    return static_cast<std::uint32_t>(it - grid_.begin());
  }
  static void prune(Frontier& f, std::size_t budget) {
    std::sort(f.begin(), f.end(), [](const FrontierEntry& x, const FrontierEntry& y) {
      if (x.grid != y.grid) return x.grid < y.grid;
      return x.switching < y.switching;
    });
    Frontier kept;
    for (const FrontierEntry& e : f) {
      if (e.switching > budget) continue;
      if (kept.empty() || e.switching < kept.back().switching) kept.push_back(e);
    }
    f = std::move(kept);
  }

  void fill(int id) {
    const TreeNode& nd = tree_.node(id);
    if (nd.is_leaf()) {
      const Representative& rep = weighted_.reps[static_cast<std::size_t>(nd.rep)];
      const std::size_t s = options_.charge_new_leaves && !rep.is_old() ? rep.weight : 0;
      for (std::size_t j = 1; j <= k_; ++j) {
        Frontier f;
        if (s <= budget_) f.push_back({0, s, Move::kLeaf, false, 1, 0, 0});
        frontier(id, j) = std::move(f);
        max_frontier_ = std::max<std::size_t>(max_frontier_, 1);
      }
      return;
    }
    const TreeNode& l = tree_.node(nd.left);
    const TreeNode& r = tree_.node(nd.right);
    const double label = nd.label / unit_;
    for (std::size_t j = 1; j <= k_; ++j) {
      Frontier f;
      auto route_out = [&](const TreeNode& out, int keep, Move move) {
        const double paid = static_cast<double>(out.weight) * label;
        const Frontier& inner = frontier(keep, j);
        for (std::uint32_t b = 0; b < inner.size(); ++b) {
          f.push_back({ceil_index(paid + grid_[inner[b].grid]), inner[b].switching + out.old_weight, move, false,
                       static_cast<std::uint32_t>(j), 0, b});
        }
      };
      route_out(l, nd.right, Move::kLeftOut);
      route_out(r, nd.left, Move::kRightOut);
      for (std::size_t kp = 1; kp < j; ++kp) {
        const Frontier& fl = frontier(nd.left, kp);
        const Frontier& fr = frontier(nd.right, j - kp);
        for (std::uint32_t a = 0; a < fl.size(); ++a) {
          for (std::uint32_t b = 0; b < fr.size(); ++b) {
            const std::size_t s = fl[a].switching + fr[b].switching;
            if (s > budget_) continue;
            f.push_back({ceil_index(grid_[fl[a].grid] + grid_[fr[b].grid]), s, Move::kSplit, false,
                         static_cast<std::uint32_t>(kp), a, b});
          }
        }
      }
      if (j > 1) {
        const Frontier& prev = frontier(id, j - 1);
        for (std::uint32_t a = 0; a < prev.size(); ++a) {
          FrontierEntry e = prev[a];
          e.inherited = true;
          e.a = a;
          f.push_back(e);
        }
      }
      prune(f, budget_);
      max_frontier_ = std::max(max_frontier_, f.size());
      frontier(id, j) = std::move(f);
    }
  }

  std::vector<std::size_t> rebuild(int id, std::size_t j, std::size_t idx, std::vector<std::size_t>& open,
                                   std::vector<std::size_t>& center_of) {
    const FrontierEntry* e = &frontier(id, j)[idx];
    while (e->inherited) {
      --j;
      e = &frontier(id, j)[e->a];
    }
    const TreeNode& nd = tree_.node(id);
    switch (e->move) {
      case Move::kLeaf: {
        const auto rep = static_cast<std::size_t>(nd.rep);
        open.push_back(rep);
        center_of[rep] = rep;
        return {rep};
      }
      case Move::kLeftOut:
      case Move::kRightOut: {
        const bool left_out = e->move == Move::kLeftOut;
        auto inner = rebuild(left_out ? nd.right : nd.left, j, e->b, open, center_of);
        route_subtree(tree_, left_out ? nd.left : nd.right, canonical_center(weighted_, inner), center_of);
        return inner;
      }
      case Move::kSplit: {
        auto a = rebuild(nd.left, e->kappa, e->a, open, center_of);
        auto b = rebuild(nd.right, j - e->kappa, e->b, open, center_of);
        a.insert(a.end(), b.begin(), b.end());
        return a;
      }
      case Move::kNone:
        break;
    }
    throw SolverError("rounded DP backtracking reached an empty entry");
  }

  const TreeEmbedding& tree_;
  const WeightedInstance& weighted_;
  std::size_t k_;
  std::size_t budget_;
  RoundedDpOptions options_;
  double unit_ = 0.0;
  double epsilon_ = 0.0;
  std::vector<double> grid_;
  std::vector<Frontier> frontiers_;
  std::size_t max_frontier_ = 0;
};

}  // namespace

double tree_solution_cost(const TreeEmbedding& tree, const WeightedInstance& weighted,
                          const std::vector<std::size_t>& center_of) {
  if (center_of.size() != weighted.size()) throw StructuralError("assignment size mismatch");
  double total = 0.0;
  for (std::size_t r = 0; r < weighted.size(); ++r)
    total += static_cast<double>(weighted.reps[r].weight) * tree.tree_distance(r, center_of[r]);
  return total;
}

std::size_t tree_solution_switching(const WeightedInstance& weighted, const std::vector<std::size_t>& open) {
  std::vector<char> is_open(weighted.size(), 0);
  for (std::size_t r : open) is_open.at(r) = 1;
  std::size_t total = 0;
  for (std::size_t r = 0; r < weighted.size(); ++r)
    if (weighted.reps[r].is_old() && !is_open[r]) total += weighted.reps[r].weight;
  return total;
}

std::size_t exact_dp_cells(const TreeEmbedding& tree, std::size_t k, std::size_t budget) {
  return tree.nodes().size() * (k + 1) * (budget + 1);
}

TreeSolution exact_tree_dp(const TreeEmbedding& tree, const WeightedInstance& weighted, std::size_t k,
                           std::size_t budget) {
  check_inputs(tree, weighted, k);
  budget = std::min(budget, weighted.old_weight());
  return ExactDp(tree, weighted, k, budget).run();
}

TreeSolution rounded_tree_dp(const TreeEmbedding& tree, const WeightedInstance& weighted, std::size_t k,
                             std::size_t budget, const RoundedDpOptions& options, RoundedDpInfo* info) {
  check_inputs(tree, weighted, k);
  return RoundedDp(tree, weighted, k, budget, options).run(info);
}

}  // namespace lcc
