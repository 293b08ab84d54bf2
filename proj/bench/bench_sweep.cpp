// Serial reference sweep against the OpenMP sweep on the Example structure.

#include <benchmark/benchmark.h>

#include "acm/report.hpp"

namespace {

const acm::AlmostContactMetricStructure& example() {
  static const auto s = acm::registry_get("example_paper_s6", {{"alpha", 1.0}});
  return s;
}

std::vector<acm::Point> points(int n) {
  return acm::sample_points(acm::Box{{{-1, 1}, {-1, 1}, {0.2, 2}}}, n, 42);
}

void BM_SweepSerial(benchmark::State& state) {
  const auto pts = points(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(acm::sweep_serial(example(), pts, 1.0));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SweepParallel(benchmark::State& state) {
  const auto pts = points(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(acm::sweep_parallel(example(), pts, 1.0));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_Geometry(benchmark::State& state) {
  const acm::Point p{0.3, -0.2, 0.5};
  for (auto _ : state) benchmark::DoNotOptimize(acm::analyze_point(example(), p, 1.0));
}

}  // namespace

BENCHMARK(BM_SweepSerial)->Arg(8)->Arg(50)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Arg(8)->Arg(50)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Geometry)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
