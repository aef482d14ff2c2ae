#include "lcc/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "lcc/error.hpp"
#include "lcc/io.hpp"
#include "lcc/rng.hpp"

namespace lcc {

namespace {

std::size_t between(Rng& rng, std::size_t lo, std::size_t hi) { return lo + rng.below(hi - lo + 1); }

double lattice(Rng& rng) { return static_cast<double>(rng.below(10000)) / 100.0; }

Metric random_geometry(const CorpusSpec& spec, std::size_t n, Rng& rng) {
  if (spec.geometry == Geometry::kEuclidean) {
    std::vector<std::vector<double>> pts(n, std::vector<double>(spec.dimension));
    for (auto& p : pts)
      for (double& x : p) x = lattice(rng);
    return Metric::euclidean(std::move(pts));
  }
  std::vector<std::vector<double>> t(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) t[i][j] = t[j][i] = static_cast<double>(1 + rng.below(20));
  return Metric::explicit_table(metric_closure(std::move(t)));
}

}  // namespace

void validate_spec(const CorpusSpec& spec) {
  if (spec.n_min < 2 || spec.n_min > spec.n_max) throw ValidationError("corpus needs 2 <= n_min <= n_max");
  if (spec.k_min < 1 || spec.k_min > spec.k_max) throw ValidationError("corpus needs 1 <= k_min <= k_max");
  if (spec.geometry == Geometry::kEuclidean && spec.dimension < 1) throw ValidationError("dimension must be positive");
  if (spec.budget_policy == BudgetPolicy::kFixed && spec.budget_values.empty())
    throw ValidationError("fixed budget policy needs values");
  if (spec.budget_policy == BudgetPolicy::kFraction && !(spec.budget_fraction >= 0.0 && spec.budget_fraction <= 1.0))
    throw ValidationError("budget fraction must lie in [0, 1]");
}

std::vector<ConsistentProblem> generate_corpus(const CorpusSpec& spec) {
  validate_spec(spec);
  std::vector<ConsistentProblem> out;
  out.reserve(spec.count);
  for (std::size_t i = 0; i < spec.count; ++i) {
    Rng rng(child_seed(spec.seed, i));
    const std::size_t n = between(rng, spec.n_min, spec.n_max);
    const std::size_t k = between(rng, spec.k_min, spec.k_max);
    Metric metric = random_geometry(spec, n, rng);

    std::vector<Index> perm(n);
    std::iota(perm.begin(), perm.end(), Index{0});
    rng.shuffle(std::span<Index>(perm));
    const std::size_t p1_size = between(rng, std::max<std::size_t>(1, n / 3), n - 1);
    std::vector<Index> p1(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(p1_size));
    std::sort(p1.begin(), p1.end());

    const std::size_t m = between(rng, 1, std::min(k, p1_size));
    std::vector<Index> pool = p1;
    rng.shuffle(std::span<Index>(pool));
    std::vector<Index> centers(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(m));
    std::sort(centers.begin(), centers.end());
    const bool random_assign = rng.below(5) == 0;
    Clustering prior;
    prior.centers = centers;
    prior.assign.assign(n, kUnassigned);
    for (Index p : p1) {
      if (std::binary_search(centers.begin(), centers.end(), p)) {
        prior.assign[p] = p;
      } else {
        prior.assign[p] = random_assign ? centers[rng.below(m)] : nearest_center(metric, p, centers);
      }
    }
    std::size_t budget = spec.budget_policy == BudgetPolicy::kFixed
                             ? spec.budget_values[rng.below(spec.budget_values.size())]
                             : static_cast<std::size_t>(std::floor(spec.budget_fraction * static_cast<double>(p1_size)));
    budget = std::min(budget, p1_size);
    out.emplace_back(std::move(metric), std::move(p1), std::move(prior), budget, k);
  }
  return out;
}

std::vector<std::filesystem::path> write_corpus(const std::vector<ConsistentProblem>& corpus,
                                                const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> paths;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "inst_%04zu.json", i);
    paths.push_back(dir / name);
    save_instance_file(corpus[i], paths.back());
  }
  return paths;
}

std::vector<std::pair<std::string, ConsistentProblem>> load_corpus(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  std::vector<std::pair<std::string, ConsistentProblem>> out;
  for (const auto& f : files) out.emplace_back(f.filename().string(), load_instance_file(f));
  return out;
}

ConsistentProblem intro_instance(const IntroCounts& counts, std::size_t budget, std::size_t k) {
  std::vector<std::vector<double>> pts;
  auto add = [&](std::size_t count, double x) {
    for (std::size_t i = 0; i < count; ++i) pts.push_back({x});
  };
  add(counts.left, -2.0);
  const Index zero = pts.size();
  add(counts.middle, 0.0);
  add(counts.right, 2.0);
  const Index hundred = pts.size();
  add(counts.far, 100.0);
  const std::size_t old = pts.size();
  add(counts.added, 3.0);
  if (counts.middle == 0 || counts.far == 0) throw ValidationError("intro instance needs points at 0 and 100");
  Metric metric = Metric::euclidean(std::move(pts));
  std::vector<Index> p1(old);
  std::iota(p1.begin(), p1.end(), Index{0});
  Clustering prior;
  prior.centers = {zero, hundred};
  prior.assign.assign(metric.size(), kUnassigned);
  for (Index p : p1) prior.assign[p] = nearest_center(metric, p, prior.centers);
  return ConsistentProblem(std::move(metric), std::move(p1), std::move(prior), budget, k);
}

Chain incremental_chain(std::size_t initial, std::size_t per_step, std::size_t steps, std::size_t dimension,
                        std::uint64_t seed) {
  if (initial == 0 || dimension == 0) throw ValidationError("chain needs points and a dimension");
  Rng rng(seed);
  Chain c;
  const std::size_t total = initial + per_step * steps;
  // Drifting blobs so later insertions pull centers around.
  for (std::size_t i = 0; i < total; ++i) {
    const double shift = 10.0 * static_cast<double>(i / std::max<std::size_t>(1, per_step));
    std::vector<double> p(dimension);
    for (double& x : p) x = lattice(rng) / 5.0 + shift * static_cast<double>(rng.below(2));
    c.points.push_back(std::move(p));
  }
  for (std::size_t s = 0; s <= steps; ++s) c.sizes.push_back(initial + per_step * s);
  return c;
}

}  // namespace lcc
