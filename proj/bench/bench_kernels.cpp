// Parallel kernels against their serial references.
//
//   ./mstnet_bench --benchmark_filter=Pearson
//   OMP_NUM_THREADS=8 ./mstnet_bench

#include <benchmark/benchmark.h>

#include "mstnet/correlation.hpp"
#include "mstnet/mst.hpp"
#include "mstnet/rolling.hpp"
#include "mstnet/synth.hpp"

namespace {

mstnet::ReturnPanel make_panel(std::size_t companies, std::size_t days) {
  mstnet::FactorModelParams p;
  p.n_companies = companies;
  p.n_days = days + 1;
  p.betas.assign(companies, 0.5);
  p.noise_sigma = 1.0;
  p.seed = 7;
  return mstnet::one_factor_returns(p);
}

void BM_PearsonReference(benchmark::State& state) {
  const auto panel = make_panel(static_cast<std::size_t>(state.range(0)), 250);
  for (auto _ : state) benchmark::DoNotOptimize(mstnet::pearson_matrix_reference(panel));
}
BENCHMARK(BM_PearsonReference)->Arg(50)->Arg(150)->Arg(300)->Unit(benchmark::kMillisecond);

void BM_PearsonParallel(benchmark::State& state) {
  const auto panel = make_panel(static_cast<std::size_t>(state.range(0)), 250);
  for (auto _ : state) benchmark::DoNotOptimize(mstnet::pearson_matrix(panel));
}
BENCHMARK(BM_PearsonParallel)->Arg(50)->Arg(150)->Arg(300)->Unit(benchmark::kMillisecond);

void BM_Prim(benchmark::State& state) {
  const auto d = mstnet::to_distance(
      mstnet::pearson_matrix(make_panel(static_cast<std::size_t>(state.range(0)), 250)));
  for (auto _ : state) benchmark::DoNotOptimize(mstnet::prim_mst(d));
}
BENCHMARK(BM_Prim)->Arg(150)->Arg(300)->Unit(benchmark::kMillisecond);

void BM_Kruskal(benchmark::State& state) {
  const auto d = mstnet::to_distance(
      mstnet::pearson_matrix(make_panel(static_cast<std::size_t>(state.range(0)), 250)));
  for (auto _ : state) benchmark::DoNotOptimize(mstnet::kruskal_mst(d));
}
BENCHMARK(BM_Kruskal)->Arg(150)->Arg(300)->Unit(benchmark::kMillisecond);

void BM_EvolveSerial(benchmark::State& state) {
  const auto panel = make_panel(100, 750);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mstnet::evolve_serial(panel, {250, 10}, "S000"));
  }
}
BENCHMARK(BM_EvolveSerial)->Unit(benchmark::kMillisecond);

void BM_EvolveParallel(benchmark::State& state) {
  const auto panel = make_panel(100, 750);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mstnet::evolve(panel, {250, 10}, "S000"));
  }
}
BENCHMARK(BM_EvolveParallel)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
