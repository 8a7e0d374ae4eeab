#include <benchmark/benchmark.h>

#include "phasesync/engine.hpp"

namespace {

using namespace phasesync;

ExperimentConfig reference(CouplingMode mode, std::uint32_t n) {
  ExperimentConfig c;
  c.n_agents = n;
  c.coupling = {mode, 0.5};
  c.init = mode == CouplingMode::Sync ? InitRule{EquallySpaced{}} : InitRule{Identical{}};
  return c;
}

void BM_RunSync(benchmark::State& state) {
  const auto cfg = reference(CouplingMode::Sync, static_cast<std::uint32_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(run(cfg).summary);
}
BENCHMARK(BM_RunSync)->Arg(6)->Arg(24)->Unit(benchmark::kMillisecond);

void BM_RunDesync(benchmark::State& state) {
  const auto cfg = reference(CouplingMode::Desync, static_cast<std::uint32_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(run(cfg).summary);
}
BENCHMARK(BM_RunDesync)->Arg(6)->Arg(24)->Unit(benchmark::kMillisecond);

void BM_RunLossyNoisy(benchmark::State& state) {
  auto cfg = reference(CouplingMode::Desync, 6);
  cfg.network.loss_prob = 0.2;
  cfg.heading_noise_std = 0.01;
  for (auto _ : state) benchmark::DoNotOptimize(run(cfg).summary);
}
BENCHMARK(BM_RunLossyNoisy)->Unit(benchmark::kMillisecond);

}  // namespace
