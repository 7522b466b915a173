#include <benchmark/benchmark.h>

#include "talpha/specfun.hpp"

using talpha::specfun::HypParams;

static void BM_Gamma(benchmark::State& state) {
  double x = 0.37;
  for (auto _ : state) {
    benchmark::DoNotOptimize(talpha::specfun::gamma(x));
    x = x < 40.0 ? x + 0.1 : 0.37;
  }
}
BENCHMARK(BM_Gamma);

static void BM_Hyp2f1_Series(benchmark::State& state) {
  const HypParams p(1.25, 0.75, 2.5);
  double z = 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(talpha::specfun::hyp2f1(p, z));
    z = z < 0.49 ? z + 0.01 : 0.01;
  }
}
BENCHMARK(BM_Hyp2f1_Series);

static void BM_Hyp2f1_Connection(benchmark::State& state) {
  // n = 3 Green-kernel parameters: c-a-b = -1/2, connection path
  const HypParams p(1.75, 1.25, 2.5);
  double z = 0.55;
  for (auto _ : state) {
    benchmark::DoNotOptimize(talpha::specfun::hyp2f1(p, z));
    z = z < 0.99 ? z + 0.004 : 0.55;
  }
}
BENCHMARK(BM_Hyp2f1_Connection);

static void BM_Hyp2f1_LogCase(benchmark::State& state) {
  // n = 4 Green-kernel parameters: c-a-b = -1, digamma expansion path
  const HypParams p(2.25, 1.25, 2.5);
  double z = 0.76;
  for (auto _ : state) {
    benchmark::DoNotOptimize(talpha::specfun::hyp2f1(p, z));
    z = z < 0.996 ? z + 0.002 : 0.76;
  }
}
BENCHMARK(BM_Hyp2f1_LogCase);

BENCHMARK_MAIN();
