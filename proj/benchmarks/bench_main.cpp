#include <benchmark/benchmark.h>

#include "cgk/diagram.hpp"
#include "cgk/fixtures.hpp"

static void EnumeratePaths(benchmark::State& state) {
  auto host = cgk::fixtures::host3(6);
  for (auto _ : state) {
    auto paths = cgk::enumerate_paths(host, 0, static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(paths);
  }
}
BENCHMARK(EnumeratePaths)->Arg(4)->Arg(6);

BENCHMARK_MAIN();
