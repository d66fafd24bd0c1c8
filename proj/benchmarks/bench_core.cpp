#include <benchmark/benchmark.h>

#include <random>

#include "dmt/dmt.hpp"

namespace {

dmt::ScalarField random_field(std::size_t n) {
  std::mt19937_64 rng(n);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(n * n);
  for (auto& x : v) x = u(rng);
  return dmt::ScalarField(dmt::Shape{n, n}, std::move(v));
}

void BM_ZeroDimPairs(benchmark::State& state) {
  auto f = random_field(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(dmt::zero_dim_pairs(f, dmt::Polarity::superlevel));
  state.SetComplexityN(static_cast<std::int64_t>(f.size()));
}

void BM_SkeletonMask(benchmark::State& state) {
  auto f = random_field(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(dmt::skeleton_mask(f, 0.2));
  state.SetComplexityN(static_cast<std::int64_t>(f.size()));
}

void BM_BasinLabels(benchmark::State& state) {
  auto f = random_field(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(dmt::basin_labels(f, 0.2));
  state.SetComplexityN(static_cast<std::int64_t>(f.size()));
}

void BM_MorseMask(benchmark::State& state) {
  auto f = random_field(static_cast<std::size_t>(state.range(0)));
  dmt::LossConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(dmt::morse_mask(f, cfg));
  state.SetComplexityN(static_cast<std::int64_t>(f.size()));
}

void BM_BettiNumbers(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(7);
  std::bernoulli_distribution coin(0.6);
  std::vector<std::uint8_t> bits(n * n);
  for (auto& b : bits) b = coin(rng);
  dmt::BinaryMask m(dmt::Shape{n, n}, bits);
  for (auto _ : state) benchmark::DoNotOptimize(dmt::betti_numbers(m));
  state.SetComplexityN(static_cast<std::int64_t>(m.size()));
}

}  // namespace

BENCHMARK(BM_ZeroDimPairs)->RangeMultiplier(2)->Range(64, 1024)->Complexity()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SkeletonMask)->RangeMultiplier(2)->Range(64, 1024)->Complexity()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BasinLabels)->RangeMultiplier(2)->Range(64, 1024)->Complexity()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MorseMask)->RangeMultiplier(2)->Range(64, 1024)->Complexity()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BettiNumbers)->RangeMultiplier(2)->Range(64, 1024)->Complexity()->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
