#include <benchmark/benchmark.h>

#include "hopbank/rng.hpp"
#include "hopbank/training.hpp"

namespace {

using namespace hopbank;

TrainingSet random_set(std::uint32_t n, std::uint32_t p, std::uint64_t seed) {
  Rng rng(seed);
  TrainingSet ts;
  for (std::uint32_t i = 0; i < p; ++i) {
    std::vector<std::int8_t> v(n);
    for (auto& x : v) x = rng.uniform01() < 0.5 ? 1 : -1;
    ts.patterns.emplace_back(std::move(v));
    ts.ids.push_back("p" + std::to_string(i));
  }
  return ts;
}

void BM_HebbianWeights(benchmark::State& state) {
  const auto ts = random_set(static_cast<std::uint32_t>(state.range(0)), 30, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(hebbian_weights(ts));
  }
}
BENCHMARK(BM_HebbianWeights)->Arg(441)->Arg(1089);

void BM_PseudoinverseRule(benchmark::State& state) {
  const auto ts = random_set(static_cast<std::uint32_t>(state.range(0)), 30, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pseudoinverse_rule_weights(ts));
  }
}
BENCHMARK(BM_PseudoinverseRule)->Unit(benchmark::kMillisecond)->Arg(441)->Arg(1089);

void BM_ProjectionRule(benchmark::State& state) {
  const auto ts = random_set(static_cast<std::uint32_t>(state.range(0)), 30, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(projection_rule_weights(ts));
  }
}
BENCHMARK(BM_ProjectionRule)->Unit(benchmark::kMillisecond)->Arg(441)->Arg(1089);

}  // namespace
