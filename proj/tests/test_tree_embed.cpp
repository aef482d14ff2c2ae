#include <cmath>

#include "doctest.h"
#include "lcc/error.hpp"
#include "lcc/oracle.hpp"
#include "lcc/reduction.hpp"
#include "lcc/tree_embedding.hpp"
#include "support.hpp"

using namespace lcc;
using namespace lcc::testing;

namespace {

double rep_diameter(const Metric& m, const WeightedInstance& w, const std::vector<std::size_t>& reps) {
  double diam = 0.0;
  for (std::size_t a : reps)
    for (std::size_t b : reps) diam = std::max(diam, m(w.reps[a].point, w.reps[b].point));
  return diam;
}

void check_tree(const TreeEmbedding& tree, const WeightedInstance& w, const Metric& m) {
  const auto& nodes = tree.nodes();
  std::size_t leaves = 0;
  for (std::size_t id = 0; id < nodes.size(); ++id) {
    const TreeNode& nd = nodes[id];
    if (nd.is_leaf()) {
      ++leaves;
      CHECK(nd.label == 0.0);
      continue;
    }
    CHECK(nd.left != kNoNode);
    CHECK(nd.right != kNoNode);
    CHECK(tree.node(nd.left).label <= nd.label);
    CHECK(tree.node(nd.right).label <= nd.label);
    // Cluster nodes carry the exact diameter; binarization nodes inherit an upper bound.
    const double diam = rep_diameter(m, w, tree.reps_under(static_cast<int>(id)));
    if (nd.synthetic) {
      CHECK(diam <= nd.label);
    } else {
      CHECK(diam == nd.label);
    }
  }
  CHECK(leaves == w.size());
  for (std::size_t a = 0; a < w.size(); ++a) {
    CHECK(tree.tree_distance(a, a) == 0.0);
    for (std::size_t b = a + 1; b < w.size(); ++b) {
      const double td = tree.tree_distance(a, b);
      CHECK(td >= m(w.reps[a].point, w.reps[b].point));
      CHECK(td == tree.tree_distance(b, a));
    }
  }
}

WeightedInstance points_as_reps(std::size_t t) {
  WeightedInstance w;
  for (std::size_t r = 0; r < t; ++r) w.reps.push_back({r, 1, RepKind::kNew});
  w.rep_of.resize(t);
  std::iota(w.rep_of.begin(), w.rep_of.end(), std::size_t{0});
  w.total_weight = t;
  return w;
}

}  // namespace

TEST_CASE("reduction without new points keeps the prior clusters") {
  const Metric m = line_metric({0, 1, 2, 10, 11});
  Clustering prior{{0, 3}, {0, 0, 0, 3, 3}};
  const ConsistentProblem p(m, {0, 1, 2, 3, 4}, prior, 0, 2);
  const auto w = reduce_points(p, 1);
  REQUIRE(w.size() == 2);
  CHECK(w.reps[0].point == 0);
  CHECK(w.reps[0].weight == 3);
  CHECK(w.reps[1].point == 3);
  CHECK(w.reps[1].weight == 2);
  CHECK(w.reps[0].is_old());
  CHECK(w.rep_of == std::vector<std::size_t>{0, 0, 0, 1, 1});
  CHECK(moving_cost(p, w) == 4.0);
}

TEST_CASE("co-located new points collapse to one representative") {
  const ConsistentProblem p(line_metric({5, 5, 5, 5}), {}, {}, 0, 2);
  const auto w = reduce_points(p, 17);
  REQUIRE(w.size() == 1);
  CHECK(w.reps[0].weight == 4);
  CHECK(!w.reps[0].is_old());
  CHECK(w.total_weight == 4);
}

TEST_CASE("reduction contract") {
  CHECK_THROWS_AS(reduce_points(oracle_corpus(1, 1).front(), 1, 0.5), ValidationError);
  for (const auto& p : oracle_corpus(60, 11)) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto w = reduce_points(p, seed);
      std::size_t total = 0;
      std::vector<std::size_t> count(w.size(), 0);
      for (Index q = 0; q < p.size(); ++q) ++count[w.rep_of[q]];
      for (std::size_t r = 0; r < w.size(); ++r) {
        CHECK(w.reps[r].weight > 0);
        CHECK(count[r] == w.reps[r].weight);
        total += w.reps[r].weight;
        if (w.reps[r].is_old()) CHECK(w.reps[r].weight == p.prior_weight(w.reps[r].point));
      }
      CHECK(total == p.size());
      CHECK(w.size() <= p.prior().centers.size() + 2 * p.k());
      for (Index q : p.p1()) CHECK(w.reps[w.rep_of[q]].point == p.old_center(q));
    }
  }
}

TEST_CASE("moving cost stays within a constant of OPT plus the prior cost") {
  double worst = 0.0;
  for (const auto& p : oracle_corpus(80, 12)) {
    const double opt = brute_force(p, Objective::kMedian).opt_value;
    const double base = opt + p.prior_cost();
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const double moving = moving_cost(p, reduce_points(p, seed));
      if (base > 0.0) worst = std::max(worst, moving / base);
      else CHECK(moving == 0.0);
    }
  }
  MESSAGE("worst moving / (OPT + prior) ratio: " << worst);
  CHECK(worst <= 20.0);
}

TEST_CASE("embedding of one and two representatives") {
  const Metric m = line_metric({0, 7});
  WeightedInstance one = points_as_reps(1);
  const auto t1 = embed(one, m, 3);
  CHECK(t1.nodes().size() == 1);
  CHECK(t1.depth() == 0);
  CHECK(t1.node(t1.root()).label == 0.0);
  const auto t2 = embed(points_as_reps(2), m, 3);
  CHECK(t2.nodes().size() == 3);
  CHECK(t2.node(t2.root()).label == 7.0);
  CHECK(t2.tree_distance(0, 1) == 7.0);
  WeightedInstance none;
  CHECK_THROWS_AS(embed(none, m, 1), ValidationError);
  CHECK_THROWS_AS(t2.tree_distance(0, 5), StructuralError);
}

TEST_CASE("co-located old representatives stay separate leaves") {
  const Metric m = line_metric({0, 0, 0, 4});
  WeightedInstance w = points_as_reps(4);
  w.reps[0].kind = RepKind::kOld;
  w.reps[1].kind = RepKind::kOld;
  const auto tree = embed(w, m, 9);
  check_tree(tree, w, m);
  CHECK(tree.leaf_count() == 4);
  CHECK(tree.tree_distance(0, 1) == 0.0);
  CHECK(tree.tree_distance(0, 2) == 0.0);
}

TEST_CASE("embedding structure on random metrics") {
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t t = 1 + rng.below(12);
    const Metric m = trial % 2 ? random_integer_metric(t, rng) : [&] {
      std::vector<std::vector<double>> pts(t, std::vector<double>(2));
      for (auto& pt : pts)
        for (double& x : pt) x = std::floor(rng.uniform(0, 50));
      return Metric::euclidean(pts);
    }();
    const WeightedInstance w = points_as_reps(t);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto tree = embed(w, m, seed);
      check_tree(tree, w, m);
      CHECK(tree.depth() <= depth_envelope(m.aspect_ratio(), t));
    }
  }
}

TEST_CASE("embedding is a pure function of the seed") {
  Rng rng(8);
  const Metric m = random_integer_metric(10, rng);
  const WeightedInstance w = points_as_reps(10);
  CHECK(tree_to_json(embed(w, m, 4), w) == tree_to_json(embed(w, m, 4), w));
}

TEST_CASE("mean stretch on 20 representatives") {
  Rng rng(20);
  std::vector<std::vector<double>> pts(20, std::vector<double>(2));
  for (auto& pt : pts)
    for (double& x : pt) x = rng.uniform(0, 100);
  const Metric m = Metric::euclidean(pts);
  const WeightedInstance w = points_as_reps(20);
  double total = 0.0;
  std::size_t count = 0;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const auto tree = embed(w, m, seed);
    for (std::size_t a = 0; a < 20; ++a)
      for (std::size_t b = a + 1; b < 20; ++b) {
        total += tree.tree_distance(a, b) / m(a, b);
        ++count;
      }
  }
  const double mean = total / static_cast<double>(count);
  MESSAGE("mean stretch " << mean << " vs 16 ln 20 = " << 16.0 * std::log(20.0));
  CHECK(mean <= 16.0 * std::log(20.0));
}
