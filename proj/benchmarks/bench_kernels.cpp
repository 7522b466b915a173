#include <benchmark/benchmark.h>

#include "talpha/fields.hpp"
#include "talpha/kernels.hpp"
#include "talpha/moebius.hpp"
#include "talpha/quadrature.hpp"
#include "talpha/solver.hpp"

using namespace talpha;

static void BM_MoebiusMap(benchmark::State& state) {
  const Vec a{0.3, -0.2, 0.4};
  Vec x{0.1, 0.5, -0.3};
  for (auto _ : state) {
    benchmark::DoNotOptimize(moebius::moebius_map(a, x));
  }
}
BENCHMARK(BM_MoebiusMap);

static void BM_GreenRadial(benchmark::State& state) {
  const Params p(3, 0.5);
  const kernels::RadialGreen green(p);
  double s = 0.05;
  for (auto _ : state) {
    benchmark::DoNotOptimize(green(s));
    s = s < 0.95 ? s + 0.01 : 0.05;
  }
}
BENCHMARK(BM_GreenRadial);

static void BM_PoissonKernel(benchmark::State& state) {
  const Params p(3, 1.0);
  const BallPoint x(Vec{0.4, 0.1, -0.2});
  const SpherePoint zeta(Vec{0.0, 0.0, 1.0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::poisson_kernel(p, x, zeta));
  }
}
BENCHMARK(BM_PoissonKernel);

static void BM_GreenPotential(benchmark::State& state) {
  const Params p(3, 0.5);
  const auto rule = quadrature::ball_rule(p, static_cast<int>(state.range(0)),
                                          static_cast<int>(state.range(0)));
  const auto m = fields::manufactured_case(p, "one-minus-r2");
  const BallPoint x(Vec{0.4, -0.1, 0.2});
  for (auto _ : state) {
    benchmark::DoNotOptimize(solver::green_potential(p, m.t_alpha_u, x, rule));
  }
  state.SetItemsProcessed(state.iterations() * rule.nodes.size());
}
BENCHMARK(BM_GreenPotential)->Arg(6)->Arg(10)->Arg(16);
