#include <benchmark/benchmark.h>

#include "lcc/corpus.hpp"
#include "lcc/kcenter.hpp"
#include "lcc/lp_relaxation.hpp"
#include "lcc/lp_rounding.hpp"
#include "lcc/pipeline.hpp"
#include "lcc/reduction.hpp"
#include "lcc/tree_dp.hpp"
#include "lcc/tree_embedding.hpp"

namespace {

lcc::ConsistentProblem instance(std::size_t n, std::size_t k) {
  lcc::CorpusSpec spec;
  spec.count = 1;
  spec.n_min = spec.n_max = n;
  spec.k_min = spec.k_max = k;
  spec.budget_policy = lcc::BudgetPolicy::kFraction;
  spec.budget_fraction = 0.2;
  spec.seed = 17;
  return lcc::generate_corpus(spec).front();
}

void BM_KCenter(benchmark::State& state) {
  const auto p = instance(static_cast<std::size_t>(state.range(0)), 5);
  for (auto _ : state) benchmark::DoNotOptimize(lcc::kcenter::solve(p));
}
BENCHMARK(BM_KCenter)->Arg(50)->Arg(200)->Arg(800);

void BM_Embed(benchmark::State& state) {
  const auto p = instance(static_cast<std::size_t>(state.range(0)), 8);
  const auto w = lcc::reduce_points(p, 1);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(lcc::embed(w, p.metric(), seed++));
}
BENCHMARK(BM_Embed)->Arg(200)->Arg(1000);

void BM_RoundedDp(benchmark::State& state) {
  const auto p = instance(400, static_cast<std::size_t>(state.range(0)));
  const auto w = lcc::reduce_points(p, 1);
  const auto tree = lcc::embed(w, p.metric(), 1);
  for (auto _ : state) benchmark::DoNotOptimize(lcc::rounded_tree_dp(tree, w, p.k(), p.budget()));
}
BENCHMARK(BM_RoundedDp)->Arg(2)->Arg(4)->Arg(8);

void BM_ExactDp(benchmark::State& state) {
  const auto p = instance(400, static_cast<std::size_t>(state.range(0)));
  const auto w = lcc::reduce_points(p, 1);
  const auto tree = lcc::embed(w, p.metric(), 1);
  for (auto _ : state) benchmark::DoNotOptimize(lcc::exact_tree_dp(tree, w, p.k(), p.budget()));
}
BENCHMARK(BM_ExactDp)->Arg(2)->Arg(4)->Arg(8);

void BM_Pipeline(benchmark::State& state) {
  const auto p = instance(static_cast<std::size_t>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(lcc::solve_pipeline(p, 1));
}
BENCHMARK(BM_Pipeline)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_LpSolve(benchmark::State& state) {
  const auto p = instance(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(lcc::solve_lp(p));
}
BENCHMARK(BM_LpSolve)->Arg(10)->Arg(20)->Arg(30)->Unit(benchmark::kMillisecond);

void BM_LpRound(benchmark::State& state) {
  const auto p = instance(static_cast<std::size_t>(state.range(0)), 3);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(lcc::round_solution(p, seed++));
}
BENCHMARK(BM_LpRound)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
