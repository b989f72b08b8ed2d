#include <benchmark/benchmark.h>

#include "kickchain/classical.hpp"
#include "kickchain/evolution.hpp"

using namespace kickchain;

static void BM_SingleKickPeriod(benchmark::State& state) {
  const auto N = static_cast<std::size_t>(state.range(0));
  const auto c = ChainConfig::ferromagnet(N);
  FloquetPropagator prop(c, SingleKick{1.0 / 15.0, 100.0});
  auto psi = MagnonState::delta(N, c.n0);
  for (auto _ : state) {
    prop.step(psi);
    benchmark::DoNotOptimize(psi.amplitudes().data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(N));
}
BENCHMARK(BM_SingleKickPeriod)->RangeMultiplier(4)->Range(256, 1 << 18);

static void BM_RandomDoubleKickPeriod(benchmark::State& state) {
  const auto N = static_cast<std::size_t>(state.range(0));
  const auto c = ChainConfig::ferromagnet(N);
  FloquetPropagator prop(c, DoubleKickRandom{0.025, 7.0, 1});
  auto psi = MagnonState::delta(N, c.n0);
  for (auto _ : state) {
    prop.step(psi);
    benchmark::DoNotOptimize(psi.amplitudes().data());
  }
}
BENCHMARK(BM_RandomDoubleKickPeriod)->Arg(2048)->Arg(1 << 14);

static void BM_DenseFloquet(benchmark::State& state) {
  const auto N = static_cast<std::size_t>(state.range(0));
  const auto c = ChainConfig::ferromagnet(N);
  for (auto _ : state) benchmark::DoNotOptimize(build_floquet(c, SingleKick{0.1, 10.0}));
}
BENCHMARK(BM_DenseFloquet)->Arg(64)->Arg(256);

static void BM_ClassicalEnsemble(benchmark::State& state) {
  const auto init = uniform_line(static_cast<std::size_t>(state.range(0)), 0.0, 3);
  for (auto _ : state) benchmark::DoNotOptimize(iterate_ensemble(init, RescaledDoubleKickRandomMap{0.35, 3}, 1000, 1000));
  state.SetItemsProcessed(state.iterations() * state.range(0) * 1000);
}
BENCHMARK(BM_ClassicalEnsemble)->Arg(1000)->Arg(10000);
BENCHMARK_MAIN();
