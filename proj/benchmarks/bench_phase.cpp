#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "phasesync/phase.hpp"

namespace {

std::vector<phasesync::Phase> random_phases(std::size_t n) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0.0, phasesync::kTwoPi);
  std::vector<phasesync::Phase> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(phasesync::wrap(u(rng)));
  return out;
}

void BM_ContainingArc(benchmark::State& state) {
  const auto phases = random_phases(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(phasesync::containing_arc(phases));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ContainingArc)->RangeMultiplier(4)->Range(2, 4096)->Complexity();

void BM_SplayError(benchmark::State& state) {
  const auto phases = random_phases(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(phasesync::splay_error(phases));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SplayError)->RangeMultiplier(4)->Range(2, 4096)->Complexity();

}  // namespace
