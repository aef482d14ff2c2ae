#include <algorithm>
#include <cmath>
#include <limits>

#include "doctest.h"
#include "lcc/error.hpp"
#include "lcc/oracle.hpp"
#include "lcc/tree_dp.hpp"
#include "support.hpp"

using namespace lcc;
using namespace lcc::testing;

namespace {

TreeEmbedding two_leaf_tree(double label, const WeightedInstance& w) {
  std::vector<TreeNode> nodes(3);
  nodes[0].left = 1;
  nodes[0].right = 2;
  nodes[0].label = label;
  for (int r = 0; r < 2; ++r) {
    TreeNode& leaf = nodes[static_cast<std::size_t>(r) + 1];
    leaf.rep = r;
    leaf.weight = w.reps[static_cast<std::size_t>(r)].weight;
    leaf.old_weight = w.reps[static_cast<std::size_t>(r)].is_old() ? leaf.weight : 0;
  }
  return TreeEmbedding(std::move(nodes), 0, 2);
}

// A dense table over every grid index: min switching at (node, j, g).
// Shares the grid definition and transitions with the library but keeps
// every state instead of a Pareto frontier.
class DenseRounded {
 public:
  DenseRounded(const TreeEmbedding& tree, const WeightedInstance& w, std::size_t k, std::size_t budget,
               double eps)
      : tree_(tree), k_(k), budget_(budget) {
    double max_label = 0.0;
    for (const TreeNode& nd : tree.nodes()) {
      if (nd.label > 0.0 && (unit_ == 0.0 || nd.label < unit_)) unit_ = nd.label;
      max_label = std::max(max_label, nd.label);
    }
    if (unit_ == 0.0) unit_ = 1.0;
    const double lambda = 2.0 * static_cast<double>(w.total_weight) * max_label / unit_;
    grid_ = {0.0, 1.0};
    double v = 1.0;
    while (v < lambda) grid_.push_back(v *= 1.0 + eps);
    g_ = grid_.size();
    table_.assign(tree.nodes().size() * (k + 1) * g_, kNone);
    for (int id : tree.post_order()) fill(id, w);
  }

  std::optional<std::size_t> answer() const {
    for (std::size_t g = 0; g < g_; ++g)
      if (at(tree_.root(), k_, g) <= budget_) return g;
    return std::nullopt;
  }

 private:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  std::size_t& at(int id, std::size_t j, std::size_t g) {
    return table_[(static_cast<std::size_t>(id) * (k_ + 1) + j) * g_ + g];
  }
  std::size_t at(int id, std::size_t j, std::size_t g) const {
    return table_[(static_cast<std::size_t>(id) * (k_ + 1) + j) * g_ + g];
  }

  std::size_t round_up(double x) const {
    std::size_t idx = 0;
    while (idx < g_ && grid_[idx] < x) ++idx;
    return idx;
  }

  void offer(int id, std::size_t j, std::size_t g, std::size_t s) {
    if (g >= g_ || s > budget_) return;
    at(id, j, g) = std::min(at(id, j, g), s);
  }

  void fill(int id, const WeightedInstance& w) {
    const TreeNode& nd = tree_.node(id);
    if (nd.is_leaf()) {
      (void)w;
      for (std::size_t j = 1; j <= k_; ++j) at(id, j, 0) = 0;
      return;
    }
    const TreeNode& l = tree_.node(nd.left);
    const TreeNode& r = tree_.node(nd.right);
    const double label = nd.label / unit_;
    for (std::size_t j = 1; j <= k_; ++j) {
      for (std::size_t b = 0; b < g_; ++b) {
        if (at(nd.right, j, b) != kNone)
          offer(id, j, round_up(l.weight * label + grid_[b]), at(nd.right, j, b) + l.old_weight);
        if (at(nd.left, j, b) != kNone)
          offer(id, j, round_up(r.weight * label + grid_[b]), at(nd.left, j, b) + r.old_weight);
      }
      for (std::size_t kp = 1; kp < j; ++kp)
        for (std::size_t a = 0; a < g_; ++a) {
          if (at(nd.left, kp, a) == kNone) continue;
          for (std::size_t b = 0; b < g_; ++b)
            if (at(nd.right, j - kp, b) != kNone)
              offer(id, j, round_up(grid_[a] + grid_[b]), at(nd.left, kp, a) + at(nd.right, j - kp, b));
        }
      if (j > 1)
        for (std::size_t g = 0; g < g_; ++g)
          if (at(id, j - 1, g) != kNone) offer(id, j, g, at(id, j - 1, g));
    }
  }

  const TreeEmbedding& tree_;
  std::size_t k_;
  std::size_t budget_;
  double unit_ = 0.0;
  std::vector<double> grid_;
  std::size_t g_ = 0;
  std::vector<std::size_t> table_;
};

struct RandomTreeCase {
  Metric metric;
  WeightedInstance weighted;
  TreeEmbedding tree;
};

RandomTreeCase random_case(Rng& rng, std::size_t t_max, std::uint64_t seed) {
  const std::size_t t = 1 + rng.below(t_max);
  Metric m = random_integer_metric(t, rng, 9);
  WeightedInstance w = synthetic_reps(t, rng);
  TreeEmbedding tree = embed(w, m, seed);
  return {std::move(m), std::move(w), std::move(tree)};
}

}  // namespace

TEST_CASE("a single leaf costs nothing") {
  WeightedInstance w;
  w.reps = {{0, 4, RepKind::kOld}};
  w.rep_of = {0, 0, 0, 0};
  w.total_weight = 4;
  std::vector<TreeNode> nodes(1);
  nodes[0].rep = 0;
  nodes[0].weight = nodes[0].old_weight = 4;
  const TreeEmbedding tree(std::move(nodes), 0, 1);
  const auto exact = exact_tree_dp(tree, w, 1, 0);
  CHECK(exact.dp_value == 0.0);
  CHECK(exact.open == std::vector<std::size_t>{0});
  const auto rounded = rounded_tree_dp(tree, w, 1, 0);
  CHECK(rounded.dp_value == 0.0);
  CHECK(rounded.switching == 0);
}

TEST_CASE("two leaves with a zero budget keep the old leaf open") {
  WeightedInstance w;
  w.reps = {{0, 5, RepKind::kOld}, {1, 3, RepKind::kNew}};
  w.total_weight = 8;
  const TreeEmbedding tree = two_leaf_tree(2.0, w);
  const auto exact = exact_tree_dp(tree, w, 1, 0);
  CHECK(exact.dp_value == 6.0);
  CHECK(exact.tree_cost == 6.0);
  CHECK(exact.open == std::vector<std::size_t>{0});
  CHECK(exact.center_of == std::vector<std::size_t>{0, 0});
  CHECK(exact.switching == 0);
  const auto two = exact_tree_dp(tree, w, 2, 0);
  CHECK(two.dp_value == 0.0);
  const auto rounded = rounded_tree_dp(tree, w, 1, 0);
  CHECK(rounded.tree_cost == 6.0);
  CHECK(rounded.dp_value >= 6.0);
  CHECK(rounded.dp_value <= 6.0 * 1.01);
}

TEST_CASE("charging new leaves counts opened new representatives as switching") {
  WeightedInstance w;
  w.reps = {{0, 5, RepKind::kOld}, {1, 3, RepKind::kNew}};
  w.total_weight = 8;
  const TreeEmbedding tree = two_leaf_tree(2.0, w);
  RoundedDpOptions literal;
  literal.charge_new_leaves = true;
  CHECK(rounded_tree_dp(tree, w, 2, 2, literal).tree_cost == 6.0);
  CHECK(rounded_tree_dp(tree, w, 2, 3, literal).tree_cost == 0.0);
  CHECK(rounded_tree_dp(tree, w, 2, 0).tree_cost == 0.0);
}

TEST_CASE("infeasible budgets raise") {
  WeightedInstance w;
  w.reps = {{0, 2, RepKind::kOld}, {1, 2, RepKind::kOld}};
  w.total_weight = 4;
  const TreeEmbedding tree = two_leaf_tree(1.0, w);
  CHECK_THROWS_AS(exact_tree_dp(tree, w, 1, 1), SolverError);
  CHECK_THROWS_AS(rounded_tree_dp(tree, w, 1, 1), SolverError);
  CHECK(exact_tree_dp(tree, w, 1, 2).dp_value == 2.0);
  CHECK_THROWS_AS(exact_tree_dp(tree, w, 0, 2), ValidationError);
}

TEST_CASE("exact DP equals brute force over representative sets") {
  Rng rng(31);
  for (int trial = 0; trial < 150; ++trial) {
    const auto c = random_case(rng, 6, static_cast<std::uint64_t>(trial));
    const std::size_t old = c.weighted.old_weight();
    for (std::size_t k = 1; k <= c.weighted.size(); ++k) {
      for (std::size_t s = 0; s <= old; ++s) {
        std::optional<TreeSolution> brute;
        try {
          brute = brute_tree(c.tree, c.weighted, k, s);
        } catch (const SolverError&) {
        }
        if (!brute) {
          CHECK_THROWS_AS(exact_tree_dp(c.tree, c.weighted, k, s), SolverError);
          continue;
        }
        const auto exact = exact_tree_dp(c.tree, c.weighted, k, s);
        CHECK(exact.dp_value == brute->tree_cost);
        CHECK(exact.tree_cost == exact.dp_value);
        CHECK(exact.switching <= s);
        CHECK(exact.open.size() <= k);
        CHECK(exact.switching == tree_solution_switching(c.weighted, exact.open));
      }
    }
  }
}

TEST_CASE("frontier DP reaches the same grid index as a dense table") {
  Rng rng(32);
  for (int trial = 0; trial < 80; ++trial) {
    const auto c = random_case(rng, 7, static_cast<std::uint64_t>(trial));
    const double eps = trial % 2 ? 0.5 : 0.2;
    const std::size_t old = c.weighted.old_weight();
    for (std::size_t k = 1; k <= std::min<std::size_t>(3, c.weighted.size()); ++k) {
      for (std::size_t s = 0; s <= old; s += 1 + old / 4) {
        const DenseRounded dense(c.tree, c.weighted, k, s, eps);
        RoundedDpOptions opts;
        opts.epsilon = eps;
        RoundedDpInfo info;
        if (!dense.answer()) {
          CHECK_THROWS_AS(rounded_tree_dp(c.tree, c.weighted, k, s, opts), SolverError);
          continue;
        }
        const auto sol = rounded_tree_dp(c.tree, c.weighted, k, s, opts, &info);
        CHECK(info.grid_index == *dense.answer());
        CHECK(sol.switching <= s);
        CHECK(sol.tree_cost <= sol.dp_value * (1.0 + 1e-12));
      }
    }
  }
}

TEST_CASE("rounded DP stays within one percent of the exact DP") {
  Rng rng(33);
  double worst = 1.0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto c = random_case(rng, 12, static_cast<std::uint64_t>(trial));
    const std::size_t old = c.weighted.old_weight();
    for (std::size_t k = 1; k <= std::min<std::size_t>(4, c.weighted.size()); ++k) {
      for (std::size_t s : {std::size_t{0}, old / 3, old}) {
        std::optional<TreeSolution> exact;
        try {
          exact = exact_tree_dp(c.tree, c.weighted, k, s);
        } catch (const SolverError&) {
          CHECK_THROWS_AS(rounded_tree_dp(c.tree, c.weighted, k, s), SolverError);
          continue;
        }
        const auto rounded = rounded_tree_dp(c.tree, c.weighted, k, s);
        CHECK(rounded.switching <= s);
        CHECK(rounded.open.size() <= k);
        CHECK(rounded.tree_cost >= exact->dp_value - 1e-9);
        CHECK(rounded.tree_cost <= rounded.dp_value * (1.0 + 1e-12));
        if (exact->dp_value == 0.0) {
          CHECK(rounded.tree_cost == 0.0);
          continue;
        }
        const double ratio = rounded.tree_cost / exact->dp_value;
        worst = std::max(worst, ratio);
        CHECK(rounded.dp_value / exact->dp_value <= 1.01);
        CHECK(ratio <= 1.01);
      }
    }
  }
  MESSAGE("worst rounded / exact: " << worst);
}

TEST_CASE("cell guard and leaf weight check") {
  WeightedInstance w;
  w.reps = {{0, 2, RepKind::kOld}, {1, 2, RepKind::kNew}};
  w.total_weight = 4;
  const TreeEmbedding tree = two_leaf_tree(1.0, w);
  CHECK(exact_dp_cells(tree, 2, 4) == 3 * 3 * 5);
  w.reps[1].weight = 3;
  CHECK_THROWS_AS(exact_tree_dp(tree, w, 1, 2), StructuralError);
  CHECK_THROWS_AS(rounded_tree_dp(tree, w, 1, 2), StructuralError);
}
