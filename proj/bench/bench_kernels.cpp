// Serial reference kernels against their OpenMP counterparts.
//   consec_bench --benchmark_filter=Direct

#include <benchmark/benchmark.h>

#include "consec/engine.hpp"
#include "consec/kernels.hpp"
#include "consec/montecarlo.hpp"
#include "consec/oracle.hpp"
#include "consec/parallel.hpp"

using namespace consec;

namespace {

const SystemShape& sweep_shape() {
  static const SystemShape shape({6, 5}, {2, 2});  // |E| = 20
  return shape;
}

void BM_DirectSerial(benchmark::State& state) {
  const CellMaskTable table(sweep_shape());
  for (auto _ : state) benchmark::DoNotOptimize(kernels::sweep_direct_serial(table));
}

void BM_DirectParallel(benchmark::State& state) {
  const CellMaskTable table(sweep_shape());
  const int workers = resolve_workers(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::sweep_direct_parallel(table, workers));
}

void BM_ZetaSerial(benchmark::State& state) {
  const CellMaskTable table(sweep_shape());
  for (auto _ : state) benchmark::DoNotOptimize(kernels::sweep_zeta_serial(table, 16));
}

void BM_ZetaParallel(benchmark::State& state) {
  const CellMaskTable table(sweep_shape());
  const int workers = resolve_workers(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::sweep_zeta_parallel(table, 16, workers));
}

void BM_InclusionExclusionReference(benchmark::State& state) {
  const SystemShape shape({4, 4}, {2, 2});  // |E| = 9, 3^9 intersections
  const auto placements = enumerate_elementary_failures(shape);
  for (auto _ : state)
    benchmark::DoNotOptimize(kernels::sweep_inclusion_exclusion(shape, placements));
}

void BM_TallySerial(benchmark::State& state) {
  const SystemShape shape({4, 5}, {2, 2});
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_tally_serial(shape));
}

void BM_TallyParallel(benchmark::State& state) {
  const SystemShape shape({4, 5}, {2, 2});
  for (auto _ : state)
    benchmark::DoNotOptimize(
        brute_force_tally(shape, kDefaultOracleCap, static_cast<int>(state.range(0))));
}

void BM_MonteCarlo(benchmark::State& state) {
  const SystemShape shape({32, 32}, {3, 3});
  for (auto _ : state)
    benchmark::DoNotOptimize(
        estimate_failure_probability(shape, 0.5, 20000, 1, static_cast<int>(state.range(0))));
}

}  // namespace

BENCHMARK(BM_DirectSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DirectParallel)->Arg(0)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ZetaSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ZetaParallel)->Arg(0)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_InclusionExclusionReference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TallySerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TallyParallel)->Arg(0)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MonteCarlo)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
