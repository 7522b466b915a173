#include <benchmark/benchmark.h>

#include <cmath>

#include "talpha/estimates.hpp"
#include "talpha/quadrature.hpp"

using namespace talpha;

static void BM_SphereRuleBuild(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(quadrature::sphere_rule(3, order));
  }
}
BENCHMARK(BM_SphereRuleBuild)->Arg(16)->Arg(32)->Arg(64);

static void BM_IntegrateSphere(benchmark::State& state) {
  const auto rule = quadrature::sphere_rule(3, static_cast<int>(state.range(0)));
  const auto f = [](const SpherePoint& z) {
    return std::exp(z.coords()[0]) * std::cos(2.0 * z.coords()[1]);
  };
  for (auto _ : state) {
    benchmark::DoNotOptimize(quadrature::integrate_sphere(rule, f));
  }
  state.SetItemsProcessed(state.iterations() * rule.nodes.size());
}
BENCHMARK(BM_IntegrateSphere)->Arg(16)->Arg(32);

static void BM_IAlphaNearBoundary(benchmark::State& state) {
  const auto rule = quadrature::sphere_rule_pole_graded(3, 16, 2e-5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimates::i_alpha(0.999, 0.5, 3, rule));
  }
}
BENCHMARK(BM_IAlphaNearBoundary);

static void BM_DiscIAlpha(benchmark::State& state) {
  const double r = 1.0 - std::pow(10.0, -static_cast<double>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimates::disc_i_alpha(r, 0.5));
  }
}
BENCHMARK(BM_DiscIAlpha)->Arg(2)->Arg(3)->Arg(4);
