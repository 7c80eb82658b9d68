#include <random>

#include <benchmark/benchmark.h>

#include "cappedlp/linalg.hpp"
#include "cappedlp/marginal.hpp"
#include "cappedlp/oracle.hpp"
#include "cappedlp/random.hpp"

using namespace cappedlp;

// Work doubles per extra row of B: 2^m constrained least-squares solves.
static void BM_OracleMinPhi(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto inst = random_least_squares_instance(6, m, 8, 0.1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(oracle_min_Phi(inst).value);
}
BENCHMARK(BM_OracleMinPhi)->DenseRange(2, 12, 2)->Unit(benchmark::kMicrosecond);

static void BM_OracleMinPsi(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto inst = random_least_squares_instance(6, m, 8, 0.1, 2);
  for (auto _ : state) benchmark::DoNotOptimize(oracle_min_Psi(inst, 10.0).value);
}
BENCHMARK(BM_OracleMinPsi)->DenseRange(2, 12, 2)->Unit(benchmark::kMicrosecond);

static void BM_BuildMarginal(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto inst = random_least_squares_instance(5, m, 6, 1.0, 3);
  for (auto _ : state) {
    const auto ms = build_marginal(inst);
    benchmark::DoNotOptimize(build_breakpoints(ms).K);
  }
}
BENCHMARK(BM_BuildMarginal)->DenseRange(2, 8, 2)->Unit(benchmark::kMicrosecond);

static void BM_OracleL0L0(benchmark::State& state) {
  const auto rows = state.range(0);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Matrix A(rows, 4), B(rows, 4);
  Vector b(rows);
  for (auto& e : A.reshaped()) e = unif(rng);
  for (auto& e : B.reshaped()) e = unif(rng);
  for (auto& e : b) e = unif(rng);
  for (auto _ : state) benchmark::DoNotOptimize(oracle_min_l0l0(A, b, B, 0.5).value);
}
BENCHMARK(BM_OracleL0L0)->DenseRange(2, 6, 2)->Unit(benchmark::kMicrosecond);

static void BM_SigmaSubsetMin(benchmark::State& state) {
  const auto rows = state.range(0);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Matrix M(rows, 4);
  for (auto& e : M.reshaped()) e = unif(rng);
  for (auto _ : state) benchmark::DoNotOptimize(sigma_subset_min(M));
}
BENCHMARK(BM_SigmaSubsetMin)->DenseRange(4, 14, 2)->Unit(benchmark::kMicrosecond);
