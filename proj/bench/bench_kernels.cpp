#include <benchmark/benchmark.h>

#include "rtb/geom_probability.hpp"
#include "rtb/observables.hpp"

using namespace rtb;

namespace {

SweepOptions options(bool parallel) {
  SweepOptions opt;
  opt.ensemble = 64;
  opt.seed = 42;
  opt.precision = Precision::Standard;
  opt.parallel = parallel;
  return opt;
}

void BM_DivergenceSerial(benchmark::State& state) {
  const SweepOptions opt = options(false);
  for (auto _ : state) benchmark::DoNotOptimize(sweep_divergence(static_cast<int>(state.range(0)), opt));
}

void BM_DivergenceParallel(benchmark::State& state) {
  const SweepOptions opt = options(true);
  for (auto _ : state) benchmark::DoNotOptimize(sweep_divergence(static_cast<int>(state.range(0)), opt));
}

void BM_ClosureSerial(benchmark::State& state) {
  const SweepOptions opt = options(false);
  for (auto _ : state) benchmark::DoNotOptimize(sweep_closure(static_cast<int>(state.range(0)), opt));
}

void BM_ClosureParallel(benchmark::State& state) {
  const SweepOptions opt = options(true);
  for (auto _ : state) benchmark::DoNotOptimize(sweep_closure(static_cast<int>(state.range(0)), opt));
}

void BM_ScanSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(scan_mean_p_serial(0.05, 3.09, 0.01));
}

void BM_ScanParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(scan_mean_p(0.05, 3.09, 0.01));
}

void BM_StepStandard(benchmark::State& state) {
  TrajectoryConfig cfg;
  cfg.theta0 = 0.7;
  cfg.max_collisions = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run(cfg, [](const CollisionRecord&) {}));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_StepExtended(benchmark::State& state) {
  TrajectoryConfig cfg;
  cfg.theta0 = 0.7;
  cfg.precision = Precision::Extended;
  cfg.max_collisions = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run(cfg, [](const CollisionRecord&) {}));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_DivergenceSerial)->Arg(10)->Arg(14)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DivergenceParallel)->Arg(10)->Arg(14)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ClosureSerial)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ClosureParallel)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScanSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScanParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StepStandard)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StepExtended)->Arg(100000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
