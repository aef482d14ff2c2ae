#include "lcc/tree_embedding.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lcc/error.hpp"
#include "lcc/rng.hpp"
#include "json.hpp"

namespace lcc {

TreeEmbedding::TreeEmbedding(std::vector<TreeNode> nodes, int root, std::size_t reps)
    : nodes_(std::move(nodes)), root_(root), leaf_of_rep_(reps, kNoNode) {
  if (root_ < 0 || static_cast<std::size_t>(root_) >= nodes_.size()) {
    throw StructuralError("tree root out of range");
  }
  // Parents and depths top-down, weights bottom-up.
  std::vector<int> stack{root_};
  nodes_[static_cast<std::size_t>(root_)].parent = kNoNode;
  nodes_[static_cast<std::size_t>(root_)].depth = 0;
  while (!stack.empty()) {
    const int id = stack.back();
    stack.pop_back();
    TreeNode& nd = nodes_[static_cast<std::size_t>(id)];
    depth_ = std::max(depth_, nd.depth);
    if (nd.is_leaf()) {
      if (nd.left != kNoNode || nd.right != kNoNode) throw StructuralError("leaf with children");
      const auto r = static_cast<std::size_t>(nd.rep);
      if (r >= reps || leaf_of_rep_[r] != kNoNode) throw StructuralError("bad leaf representative");
      leaf_of_rep_[r] = id;
      continue;
    }
    if (nd.left == kNoNode || nd.right == kNoNode) {
      throw StructuralError("internal node without two children");
    }
    for (int child : {nd.left, nd.right}) {
      TreeNode& ch = nodes_[static_cast<std::size_t>(child)];
      ch.parent = id;
      ch.depth = nd.depth + 1;
      stack.push_back(child);
    }
  }
  for (int leaf : leaf_of_rep_)
    if (leaf == kNoNode) throw StructuralError("representative without a leaf");
  for (int id : post_order()) {
    TreeNode& nd = nodes_[static_cast<std::size_t>(id)];
    if (nd.is_leaf()) continue;
    const TreeNode& l = nodes_[static_cast<std::size_t>(nd.left)];
    const TreeNode& r = nodes_[static_cast<std::size_t>(nd.right)];
    nd.weight = l.weight + r.weight;
    nd.old_weight = l.old_weight + r.old_weight;
  }
}

int TreeEmbedding::leaf_of(std::size_t rep) const {
  if (rep >= leaf_of_rep_.size()) throw StructuralError("unknown representative");
  return leaf_of_rep_[rep];
}

int TreeEmbedding::lca(int a, int b) const {
  while (node(a).depth > node(b).depth) a = node(a).parent;
  while (node(b).depth > node(a).depth) b = node(b).parent;
  while (a != b) {
    a = node(a).parent;
    b = node(b).parent;
  }
  return a;
}

double TreeEmbedding::tree_distance(std::size_t rep_a, std::size_t rep_b) const {
  if (rep_a == rep_b) {
    leaf_of(rep_a);
    return 0.0;
  }
  return node(lca(leaf_of(rep_a), leaf_of(rep_b))).label;
}

std::vector<std::size_t> TreeEmbedding::reps_under(int id) const {
  std::vector<std::size_t> out;
  std::vector<int> stack{id};
  while (!stack.empty()) {
    const int cur = stack.back();
    stack.pop_back();
    const TreeNode& nd = node(cur);
    if (nd.is_leaf()) {
      out.push_back(static_cast<std::size_t>(nd.rep));
    } else {
      stack.push_back(nd.right);
      stack.push_back(nd.left);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> TreeEmbedding::post_order() const {
  std::vector<int> order;
  order.reserve(nodes_.size());
  std::vector<std::pair<int, bool>> stack{{root_, false}};
  while (!stack.empty()) {
    auto [id, expanded] = stack.back();
    stack.pop_back();
    const TreeNode& nd = nodes_[static_cast<std::size_t>(id)];
    if (expanded || nd.is_leaf()) {
      order.push_back(id);
      continue;
    }
    stack.push_back({id, true});
    stack.push_back({nd.right, false});
    stack.push_back({nd.left, false});
  }
  return order;
}

namespace {

class TreeBuilder {
 public:
  TreeBuilder(const WeightedInstance& weighted, const Metric& metric, std::uint64_t seed)
      : t_(weighted.size()), dist_(t_ * t_, 0.0) {
    for (std::size_t a = 0; a < t_; ++a)
      for (std::size_t b = 0; b < t_; ++b)
        dist_[a * t_ + b] = metric(weighted.reps[a].point, weighted.reps[b].point);
    double lo = 0.0;
    double hi = 0.0;
    for (double x : dist_) {
      if (x > 0.0 && (lo == 0.0 || x < lo)) lo = x;
      hi = std::max(hi, x);
    }
    unit_ = lo;
    top_level_ = lo > 0.0 ? static_cast<int>(std::ceil(std::log2(hi / lo))) : 0;

    Rng rng(seed);
    beta_ = rng.uniform(1.0, 2.0);
    perm_.resize(t_);
    std::iota(perm_.begin(), perm_.end(), std::size_t{0});
    rng.shuffle(std::span<std::size_t>(perm_));

    for (std::size_t r = 0; r < t_; ++r) {
      TreeNode leaf;
      leaf.rep = static_cast<int>(r);
      leaf.weight = weighted.reps[r].weight;
      leaf.old_weight = weighted.reps[r].is_old() ? weighted.reps[r].weight : 0;
      nodes_.push_back(leaf);
    }
  }

  TreeEmbedding build() {
    std::vector<std::size_t> all(t_);
    std::iota(all.begin(), all.end(), std::size_t{0});
    const int root = decompose(all, top_level_ - 1);
    return TreeEmbedding(std::move(nodes_), root, t_);
  }

 private:
  double d(std::size_t a, std::size_t b) const { return dist_[a * t_ + b]; }

  double diameter(const std::vector<std::size_t>& members) const {
    double diam = 0.0;
    for (std::size_t a = 0; a < members.size(); ++a)
      for (std::size_t b = a + 1; b < members.size(); ++b) diam = std::max(diam, d(members[a], members[b]));
    return diam;
  }

  std::vector<std::vector<std::size_t>> split(const std::vector<std::size_t>& members, int level) const {
    const double radius = beta_ * std::ldexp(1.0, level) * unit_;
    std::vector<char> taken(members.size(), 0);
    std::size_t remaining = members.size();
    std::vector<std::vector<std::size_t>> parts;
    for (std::size_t center : perm_) {
      if (remaining == 0) break;
      std::vector<std::size_t> part;
      for (std::size_t i = 0; i < members.size(); ++i) {
        if (!taken[i] && d(center, members[i]) <= radius) {
          taken[i] = 1;
          --remaining;
          part.push_back(members[i]);
        }
      }
      if (!part.empty()) parts.push_back(std::move(part));
    }
    return parts;
  }

  int add_internal(int left, int right, double label, bool synthetic) {
    TreeNode nd;
    nd.left = left;
    nd.right = right;
    nd.label = label;
    nd.synthetic = synthetic;
    nodes_.push_back(nd);
    return static_cast<int>(nodes_.size() - 1);
  }

  // Balanced pairing of a wide child list; the outermost node is the cluster itself.
  int combine(const std::vector<int>& ids, std::size_t lo, std::size_t hi, double label, bool top) {
    if (hi - lo == 1) return ids[lo];
    const std::size_t mid = lo + (hi - lo) / 2;
    const int left = combine(ids, lo, mid, label, false);
    const int right = combine(ids, mid, hi, label, false);
    return add_internal(left, right, label, !top);
  }

  int decompose(const std::vector<std::size_t>& members, int level) {
    if (members.size() == 1) return static_cast<int>(members[0]);
    const double diam = diameter(members);
    std::vector<int> children;
    if (diam == 0.0) {
      for (std::size_t m : members) children.push_back(static_cast<int>(m));
      return combine(children, 0, children.size(), 0.0, true);
    }
    auto parts = split(members, level);
    while (parts.size() == 1) parts = split(members, --level);
    for (const auto& part : parts) children.push_back(decompose(part, level - 1));
    return combine(children, 0, children.size(), diam, true);
  }

  std::size_t t_;
  std::vector<double> dist_;
  double unit_ = 0.0;
  int top_level_ = 0;
  double beta_ = 1.0;
  std::vector<std::size_t> perm_;
  std::vector<TreeNode> nodes_;
};

}  // namespace

TreeEmbedding embed(const WeightedInstance& weighted, const Metric& metric, std::uint64_t seed) {
  if (weighted.size() == 0) throw ValidationError("cannot embed an empty set of representatives");
  return TreeBuilder(weighted, metric, seed).build();
}

double depth_envelope(double aspect_ratio, std::size_t reps) {
  const double log_aspect = std::ceil(std::log2(std::max(1.0, aspect_ratio)));
  const double log_t = std::ceil(std::log2(static_cast<double>(std::max<std::size_t>(1, reps))));
  return 4.0 * (log_aspect + 1.0) * (log_t + 1.0);
}

std::string tree_to_json(const TreeEmbedding& tree, const WeightedInstance& weighted, int indent) {
  nlohmann::ordered_json j;
  j["root"] = tree.root();
  j["depth"] = tree.depth();
  j["leaves"] = tree.leaf_count();
  auto nodes = nlohmann::ordered_json::array();
  for (std::size_t id = 0; id < tree.nodes().size(); ++id) {
    const TreeNode& nd = tree.nodes()[id];
    nlohmann::ordered_json e;
    e["id"] = id;
    e["label"] = nd.label;
    e["children"] = nd.is_leaf() ? nlohmann::ordered_json::array()
                                 : nlohmann::ordered_json::array({nd.left, nd.right});
    e["weight"] = nd.weight;
    if (nd.is_leaf()) {
      const Representative& r = weighted.reps[static_cast<std::size_t>(nd.rep)];
      e["rep"] = nd.rep;
      e["point"] = r.point;
      e["kind"] = r.is_old() ? "old" : "new";
    }
    if (nd.synthetic) e["synthetic"] = true;
    nodes.push_back(std::move(e));
  }
  j["nodes"] = std::move(nodes);
  return j.dump(indent);
}

}  // namespace lcc
