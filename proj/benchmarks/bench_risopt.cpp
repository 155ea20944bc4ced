#include <benchmark/benchmark.h>

#include "risopt/admm_wsinr.hpp"
#include "risopt/channel.hpp"
#include "risopt/qcqp.hpp"

namespace {

using namespace risopt;

ScenarioConfig scenario(int m, int n) {
  ScenarioConfig cfg;
  cfg.m = m;
  cfg.n = n;
  cfg.seed = 7;
  return cfg;
}

void BM_ChannelGen(benchmark::State& state) {
  const ScenarioConfig cfg =
      scenario(static_cast<int>(state.range(0)),
               static_cast<int>(state.range(1)));
  std::uint64_t trial = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(make_channel_set(cfg, trial++));
  }
}
BENCHMARK(BM_ChannelGen)->Args({4, 16})->Args({8, 64});

void BM_SolveBounded(benchmark::State& state) {
  const ScenarioConfig cfg =
      scenario(static_cast<int>(state.range(0)),
               static_cast<int>(state.range(1)));
  const ChannelSet cs = make_channel_set(cfg, 0);
  const CVec y = CVec::Zero(cfg.n), mu = CVec::Zero(cfg.n);
  // Large rho keeps the instance bounded so every iteration hits the
  // global branch.
  const Qcqp1 q = assemble_wsinr_x(cs, 0.5, 10.0, mu, y);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_bounded(q));
  }
}
BENCHMARK(BM_SolveBounded)->Args({2, 8})->Args({4, 16})->Args({4, 32});

void BM_EscapeStep(benchmark::State& state) {
  const ScenarioConfig cfg =
      scenario(static_cast<int>(state.range(0)),
               static_cast<int>(state.range(1)));
  const ChannelSet cs = make_channel_set(cfg, 0);
  const CVec x0 = feasible_init(cs).x;
  // rho = 0 leaves the quadratic form negative semidefinite: unbounded.
  const Qcqp1 q =
      assemble_wsinr_x(cs, 0.5, 0.0, CVec::Zero(cfg.n), CVec::Zero(cfg.n));
  for (auto _ : state) {
    benchmark::DoNotOptimize(escape_step(q, x0));
  }
}
BENCHMARK(BM_EscapeStep)->Args({4, 16})->Args({4, 32});

void BM_Alg1(benchmark::State& state) {
  const ScenarioConfig cfg = scenario(4, static_cast<int>(state.range(0)));
  const ChannelSet cs = make_channel_set(cfg, 0);
  AdmmParams params;
  params.k_max = static_cast<int>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        run_alg1(cs, 0.5, params, 2.0, 1e-11, std::nullopt, false));
  }
}
BENCHMARK(BM_Alg1)->Args({16, 5})->Args({16, 25});

}  // namespace

BENCHMARK_MAIN();
