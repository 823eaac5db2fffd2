#include <benchmark/benchmark.h>

#include <dicke/liouvillian.hpp>
#include <dicke/meanfield.hpp>
#include <dicke/spectroscopy.hpp>
#include <dicke/superradiance.hpp>
#include <dicke/symspace.hpp>

using namespace dicke;

namespace {

ModelParams reference(int n, double delta1) {
  ModelParams p = eit_reference_params();
  p.n_atoms = n;
  p.delta1 = delta1;
  return p;
}

void BM_BasisAndOperators(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const auto b = SymmetricBasis::build(n);
    benchmark::DoNotOptimize(lowering_operator(b, Branch::one));
    benchmark::DoNotOptimize(lowering_operator(b, Branch::two));
  }
}
BENCHMARK(BM_BasisAndOperators)->Arg(14)->Arg(30)->Arg(60);

void BM_AssembleLiouvillian(benchmark::State& state) {
  const auto p = reference(static_cast<int>(state.range(0)), 0.3);
  const auto b = SymmetricBasis::build(p.n_atoms);
  for (auto _ : state) benchmark::DoNotOptimize(build_liouvillian(p, b));
}
BENCHMARK(BM_AssembleLiouvillian)->Arg(8)->Arg(14)->Unit(benchmark::kMillisecond);

// range(1) = 1000 * Delta1; the line-center point takes a cheaper path.
void BM_SteadyState(benchmark::State& state) {
  const auto p = reference(static_cast<int>(state.range(0)), state.range(1) / 1000.0);
  const auto b = SymmetricBasis::build(p.n_atoms);
  const auto L = build_liouvillian(p, b);
  for (auto _ : state) benchmark::DoNotOptimize(steady_state(L));
}
BENCHMARK(BM_SteadyState)->Args({8, 0})->Args({8, 300})->Args({14, 0})->Args({14, 300})
    ->Unit(benchmark::kMillisecond);

void BM_ExactBurst(benchmark::State& state) {
  const ModelParams p = [&] {
    ModelParams q = superradiance_params(false);
    q.n_atoms = static_cast<int>(state.range(0));
    return q;
  }();
  const auto t = sr_time_grid(0.2, 201);
  for (auto _ : state) benchmark::DoNotOptimize(sr_transient_exact(p, 0.1, t));
}
BENCHMARK(BM_ExactBurst)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_MeanFieldBurst(benchmark::State& state) {
  ModelParams p = superradiance_params(false);
  p.n_atoms = 30;
  const auto t = sr_time_grid(0.5, 2001);
  for (auto _ : state) benchmark::DoNotOptimize(sr_transient_mf(p, 0.1, t));
}
BENCHMARK(BM_MeanFieldBurst)->Unit(benchmark::kMillisecond);

void BM_RepSteadyState(benchmark::State& state) {
  const auto p = reference(14, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(rep_steady_state(p));
}
BENCHMARK(BM_RepSteadyState)->Unit(benchmark::kMicrosecond);

void BM_ChiMfScan(benchmark::State& state) {
  const auto p = reference(14, 0.0);
  const auto grid = uniform_grid(-200.0, 200.0, 201);
  for (auto _ : state) benchmark::DoNotOptimize(scan_mf(p, grid, MfMode::analytic));
}
BENCHMARK(BM_ChiMfScan);

}  // namespace

BENCHMARK_MAIN();
