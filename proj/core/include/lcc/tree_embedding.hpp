#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lcc/metric.hpp"
#include "lcc/reduction.hpp"

namespace lcc {

inline constexpr int kNoNode = -1;

struct TreeNode {
  int left = kNoNode;
  int right = kNoNode;
  int parent = kNoNode;
  /// Representative index for leaves, kNoNode for internal nodes.
  int rep = kNoNode;
  /// Diameter label. Leaves carry 0.
  double label = 0.0;
  /// True for nodes introduced while binarizing a wide cluster; they inherit
  /// the label of the cluster they split.
  bool synthetic = false;
  int depth = 0;
  std::size_t weight = 0;
  std::size_t old_weight = 0;

  bool is_leaf() const noexcept { return rep != kNoNode; }
};

/// A rooted binary tree whose leaves are the representatives of a weighted
/// instance. Tree distance between two leaves is the label of their lowest
/// common ancestor, which never undercuts the metric distance.
class TreeEmbedding {
 public:
  TreeEmbedding(std::vector<TreeNode> nodes, int root, std::size_t reps);

  const std::vector<TreeNode>& nodes() const noexcept { return nodes_; }
  const TreeNode& node(int id) const { return nodes_.at(static_cast<std::size_t>(id)); }
  int root() const noexcept { return root_; }
  /// Longest root-to-leaf path, in edges.
  int depth() const noexcept { return depth_; }
  std::size_t leaf_count() const noexcept { return leaf_of_rep_.size(); }
  int leaf_of(std::size_t rep) const;

  int lca(int a, int b) const;
  /// Label of the LCA of two representatives' leaves; 0 when a == b.
  double tree_distance(std::size_t rep_a, std::size_t rep_b) const;
  /// Representatives below (or at) a node.
  std::vector<std::size_t> reps_under(int id) const;
  /// Nodes in post-order (children before parents).
  std::vector<int> post_order() const;

 private:
  std::vector<TreeNode> nodes_;
  int root_ = kNoNode;
  int depth_ = 0;
  std::vector<int> leaf_of_rep_;
};

/// Samples a hierarchically separated decomposition of the representatives
/// (random permutation, random radius scale beta in [1,2), radii beta * 2^i
/// in units of the smallest nonzero distance), labels every cluster with its
/// exact diameter, and binarizes wide clusters by balanced halving.
/// Co-located representatives end up in a zero-diameter cluster.
TreeEmbedding embed(const WeightedInstance& weighted, const Metric& metric, std::uint64_t seed);

/// Generous depth envelope 4 * (ceil(log2 aspect) + 1) * (ceil(log2 t) + 1).
double depth_envelope(double aspect_ratio, std::size_t reps);

std::string tree_to_json(const TreeEmbedding& tree, const WeightedInstance& weighted, int indent = 2);

}  // namespace lcc
