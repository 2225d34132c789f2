#include <benchmark/benchmark.h>

#include "implreg/compare.hpp"
#include "implreg/dataio.hpp"
#include "implreg/fitcore.hpp"
#include "implreg/simulate.hpp"

namespace {

void BM_Generate(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(implreg::generate({n, 5.0, seed++}));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Generate)->Arg(50)->Arg(5000);

void BM_FitOls(benchmark::State& state) {
  const auto d = implreg::generate({static_cast<std::size_t>(state.range(0)), 5.0, 1});
  const auto spec = implreg::parse_model("y ~ 1 + x + x*y");
  for (auto _ : state) benchmark::DoNotOptimize(implreg::fit_ols(spec, d));
}
BENCHMARK(BM_FitOls)->Arg(50)->Arg(5000);

void BM_CompareModels(benchmark::State& state) {
  const auto d = implreg::generate({50, 5.0, 1});
  for (auto _ : state) benchmark::DoNotOptimize(implreg::compare_models(d));
}
BENCHMARK(BM_CompareModels);

void BM_BoyleReport(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(implreg::boyle_report());
}
BENCHMARK(BM_BoyleReport);

}  // namespace

BENCHMARK_MAIN();
