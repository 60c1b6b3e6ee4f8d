#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "twostate/hjb.hpp"
#include "twostate/models.hpp"
#include "twostate/nplayer.hpp"
#include "twostate/shock.hpp"

using namespace twostate;

namespace {

SolverConfig config(std::size_t n, double t_final) {
  SolverConfig c;
  c.n_grid = n;
  c.dt = 1e-4;
  c.t_final = t_final;
  c.snapshot_times = {0.0};
  return c;
}

void BM_NPlayerRhs(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const NPlayerOperator op(shock_model(), n);
  std::vector<double> u1(n + 1), u2(n + 1), d1(n + 1), d2(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    u1[k] = std::sin(0.1 * k);
    u2[k] = std::cos(0.1 * k);
  }
  for (auto _ : state) {
    op.evaluate(u1, u2, d1, d2, 0, n + 1);
    benchmark::DoNotOptimize(d1.data());
    benchmark::DoNotOptimize(d2.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n + 1));
}
BENCHMARK(BM_NPlayerRhs)->Arg(100)->Arg(200)->Arg(1000);

void BM_GodunovFlux(benchmark::State& state) {
  double a = -1.3, b = 0.7, z = 0.2, acc = 0.0;
  for (auto _ : state) {
    acc += godunov_flux_with(a, b, z, 0.16);
    a += 1e-9;
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_GodunovFlux);

void BM_SolveNPlayer(benchmark::State& state) {
  const ModelSpec m = shock_model();
  const SolverConfig c = config(static_cast<std::size_t>(state.range(0)), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(solve_nplayer(m, c));
}
BENCHMARK(BM_SolveNPlayer)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_SolveHjb(benchmark::State& state) {
  const ModelSpec m = shock_model();
  const HjConfig c{config(100, 1.0), std::nullopt};
  for (auto _ : state) benchmark::DoNotOptimize(solve_hjb(m, c));
}
BENCHMARK(BM_SolveHjb)->Unit(benchmark::kMillisecond);

void BM_SolveScalar(benchmark::State& state) {
  const ModelSpec m = shock_model();
  const SolverConfig c = config(100, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(solve_scalar(m, c));
}
BENCHMARK(BM_SolveScalar)->Unit(benchmark::kMillisecond);

void BM_SolveDensity(benchmark::State& state) {
  SolverConfig wc = config(100, 1.0);
  wc.record_stride = 10;
  const RunArtifact w = solve_scalar(shock_model(), wc);
  const SolverConfig c = config(125, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(solve_density(w, c));
}
BENCHMARK(BM_SolveDensity)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
