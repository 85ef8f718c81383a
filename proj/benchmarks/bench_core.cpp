#include <benchmark/benchmark.h>

#include "hardy/atomic.hpp"
#include "hardy/pietsch.hpp"
#include "hardy/pisier.hpp"
#include "hardy/random.hpp"

namespace {

hardy::HaarExpansion sample(int max_level, int dimension = 1) {
  return hardy::gen_random(max_level, dimension, 0.5, 1234);
}

void levels(benchmark::internal::Benchmark* b) {
  for (int n : {4, 6, 8, 10, 12}) b->Arg(n);
}

void BM_HpNorm(benchmark::State& state) {
  const auto u = sample(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(hardy::hp_norm(u, 1.0));
  state.counters["coefficients"] = static_cast<double>(u.size());
}
BENCHMARK(BM_HpNorm)->Apply(levels);

void BM_Decompose(benchmark::State& state) {
  const auto u = sample(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(hardy::decompose(u, 1.0));
  state.counters["coefficients"] = static_cast<double>(u.size());
}
BENCHMARK(BM_Decompose)->Apply(levels);

void BM_WeightsHp(benchmark::State& state) {
  const auto u = sample(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(hardy::weights_hp(u, 1.0));
}
BENCHMARK(BM_WeightsHp)->Apply(levels);

void BM_WeightsVector(benchmark::State& state) {
  const auto u = sample(static_cast<int>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(hardy::weights_vector(u, 1.0));
}
BENCHMARK(BM_WeightsVector)->Apply(levels);

void BM_Factorize(benchmark::State& state) {
  const auto u = sample(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(hardy::factorize(u, 1.5, 3.0));
}
BENCHMARK(BM_Factorize)->Apply(levels);

void BM_CarlesonConstant(benchmark::State& state) {
  const auto family = sample(static_cast<int>(state.range(0))).support();
  for (auto _ : state) benchmark::DoNotOptimize(hardy::carleson_constant(family));
  state.counters["intervals"] = static_cast<double>(family.size());
}
BENCHMARK(BM_CarlesonConstant)->Apply(levels);

}  // namespace

BENCHMARK_MAIN();
