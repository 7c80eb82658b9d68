#include <benchmark/benchmark.h>

#include "cappedlp/random.hpp"
#include "cappedlp/solver.hpp"

using namespace cappedlp;

static void BM_BcdSolve(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto inst = random_least_squares_instance(n, n, 2 * n, 0.1, 7);
  for (auto _ : state) benchmark::DoNotOptimize(bcd_solve(inst, 100.0).split_value);
}
BENCHMARK(BM_BcdSolve)->RangeMultiplier(2)->Range(4, 64)->Unit(benchmark::kMicrosecond);

static void BM_ContinuationSolve(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto inst = random_least_squares_instance(n, n, 2 * n, 0.1, 8);
  for (auto _ : state) benchmark::DoNotOptimize(continuation_solve(inst).candidate_phi);
}
BENCHMARK(BM_ContinuationSolve)->RangeMultiplier(2)->Range(4, 64)->Unit(benchmark::kMicrosecond);
