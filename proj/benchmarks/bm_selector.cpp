#include <benchmark/benchmark.h>

#include "hopbank/rng.hpp"
#include "hopbank/selector.hpp"
#include "hopbank/synth.hpp"

namespace {

using namespace hopbank;

// Probe cost across bank sizes at desk-scale geometry.
void BM_SelectNetwork(benchmark::State& state) {
  const std::uint32_t k = static_cast<std::uint32_t>(state.range(0));
  TrainingSet corpus;
  for (std::uint32_t p = 0; p < k * 10; ++p) {
    corpus.patterns.push_back(
        to_bipolar(vectorize(synth_pattern(21, 21, 0.5, false, derive_seed(1, p)))));
    corpus.ids.push_back("p" + std::to_string(p));
  }
  const NetworkBank bank =
      train_bank(corpus, BankGeometry{21, 21}, k, LearningRule::PseudoinverseHebbian, 2);

  const BinaryImage noisy = synth_pattern(21, 21, 0.5, false, 3);
  const BipolarState input = to_bipolar(vectorize(noisy));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(select_network(bank, input, 100, seed++));
  }
}
BENCHMARK(BM_SelectNetwork)->Unit(benchmark::kMicrosecond)->Arg(1)->Arg(2)->Arg(4)->Arg(8);

}  // namespace
