#include <benchmark/benchmark.h>

#include "hopbank/dynamics.hpp"
#include "hopbank/rng.hpp"

namespace {

using namespace hopbank;

WeightMatrix random_weights(std::uint32_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> w(static_cast<std::size_t>(n) * n, 0.0);
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i + 1; j < n; ++j) {
      const double v = rng.normal();
      w[static_cast<std::size_t>(i) * n + j] = v;
      w[static_cast<std::size_t>(j) * n + i] = v;
    }
  }
  return WeightMatrix(n, std::move(w));
}

BipolarState random_state(std::uint32_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::int8_t> v(n);
  for (auto& x : v) x = rng.uniform01() < 0.5 ? 1 : -1;
  return BipolarState(std::move(v));
}

void BM_Energy(benchmark::State& state) {
  const std::uint32_t n = static_cast<std::uint32_t>(state.range(0));
  const WeightMatrix w = random_weights(n, 1);
  const BipolarState s = random_state(n, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(energy(w, s));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_Energy)->RangeMultiplier(3)->Range(81, 3249)->Complexity(benchmark::oNSquared);

void BM_Sweep(benchmark::State& state) {
  const std::uint32_t n = static_cast<std::uint32_t>(state.range(0));
  const WeightMatrix w = random_weights(n, 3);
  const BipolarState s = random_state(n, 4);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_iterations(w, s, n, seed++));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_Sweep)->RangeMultiplier(3)->Range(81, 3249)->Complexity(benchmark::oNSquared);

}  // namespace
