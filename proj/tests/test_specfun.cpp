#include <doctest.h>

#include <cmath>
#include <random>

#include "talpha/specfun.hpp"
#include "test_util.hpp"

using namespace talpha;
using specfun::HypParams;

namespace {

// Independent oracle: plain term-by-term summation of the Gauss series,
// no transformations. Converges for |z| < 1.
double series_oracle(double a, double b, double c, double z) {
  double term = 1.0, sum = 1.0;
  for (long k = 0; k < 4000000; ++k) {
    term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

}  // namespace

TEST_CASE("gamma: standard values") {
  CHECK(specfun::gamma(1.0) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(specfun::gamma(5.0) == doctest::Approx(24.0).epsilon(1e-13));
  CHECK(specfun::gamma(0.5) ==
        doctest::Approx(std::sqrt(specfun::kPi)).epsilon(1e-13));
  // reflection side
  CHECK(specfun::gamma(-0.5) ==
        doctest::Approx(-2.0 * std::sqrt(specfun::kPi)).epsilon(1e-12));
}

TEST_CASE("gamma: relative accuracy 1e-12 on [-20, 50]") {
  double worst = 0.0;
  for (double x = -19.75; x <= 50.0; x += 0.25) {
    if (x <= 0.0 && std::abs(x - std::round(x)) < 1e-9) continue;
    const double ref = std::tgamma(x);
    worst = std::max(worst, std::abs(specfun::gamma(x) - ref) / std::abs(ref));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("gamma: poles throw") {
  CHECK_THROWS_AS(specfun::gamma(0.0), PoleError);
  CHECK_THROWS_AS(specfun::gamma(-3.0), PoleError);
  CHECK(specfun::reciprocal_gamma(-3.0) == 0.0);
}

TEST_CASE("digamma: reference values") {
  CHECK(specfun::digamma(1.0) ==
        doctest::Approx(-0.57721566490153286).epsilon(1e-13));
  CHECK(specfun::digamma(0.5) ==
        doctest::Approx(-1.9635100260214235).epsilon(1e-13));
  CHECK(specfun::digamma(-1.5) ==
        doctest::Approx(0.70315664064524319).epsilon(1e-12));
  CHECK_THROWS_AS(specfun::digamma(-2.0), PoleError);
}

TEST_CASE("hyp2f1: pinned examples") {
  CHECK(specfun::hyp2f1(HypParams(1.3, -0.7, 2.1), 0.0) == 1.0);
  // closed form -ln(1-z)/z at (1,1,2)
  CHECK(specfun::hyp2f1(HypParams(1, 1, 2), 0.5) ==
        doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));
  CHECK(specfun::hyp2f1(HypParams(1, 1, 2), 0.5) ==
        doctest::Approx(series_oracle(1, 1, 2, 0.5)).epsilon(1e-12));
  // a = -alpha/2 = 0 truncates the series (n=3, alpha=0 specialization)
  CHECK(specfun::hyp2f1(HypParams(0.0, 0.5, 1.5), 0.25) == 1.0);
}

TEST_CASE("hyp2f1: rejects |z| >= 1 and degenerate c") {
  CHECK_THROWS_AS(specfun::hyp2f1(HypParams(1, 1, 2), 1.0), std::domain_error);
  CHECK_THROWS_AS(specfun::hyp2f1(HypParams(1, 1, 2), -1.0), std::domain_error);
  CHECK_THROWS_AS(HypParams(1, 1, 0.0), DegenerateParameterError);
  CHECK_THROWS_AS(HypParams(1, 1, -2.0), DegenerateParameterError);
}

TEST_CASE("hyp2f1: series consistency on 200 random tuples") {
  std::mt19937_64 rng(20240811);
  int checked = 0;
  double worst = 0.0;
  while (checked < 200) {
    const double a = test_util::uniform(rng, -5.0, 5.0);
    const double b = test_util::uniform(rng, -5.0, 5.0);
    const double c = test_util::uniform(rng, 0.5, 6.0);
    const double z = test_util::uniform(rng, -0.9, 0.9);
    const double ref = series_oracle(a, b, c, z);
    if (std::abs(ref) < 1e-8) continue;  // avoid relative error blowups
    const double got = specfun::hyp2f1(HypParams(a, b, c), z);
    worst = std::max(worst, std::abs(got - ref) / std::abs(ref));
    ++checked;
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("hyp2f1: z -> 1-z connection region agrees with the oracle") {
  std::mt19937_64 rng(77);
  double worst = 0.0;
  for (int i = 0; i < 60; ++i) {
    const double a = test_util::uniform(rng, -2.0, 2.0);
    const double b = test_util::uniform(rng, -2.0, 2.0);
    const double c = test_util::uniform(rng, 0.5, 4.0);
    const double z = test_util::uniform(rng, 0.55, 0.97);
    const double ref = series_oracle(a, b, c, z);
    if (std::abs(ref) < 1e-8) continue;
    const double got = specfun::hyp2f1(HypParams(a, b, c), z);
    worst = std::max(worst, std::abs(got - ref) / std::abs(ref));
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("hyp2f1: integer c-a-b logarithmic cases agree with the oracle") {
  // c = a+b+m for m in {-2,-1,0,1,2}: the two-term connection degenerates
  std::mt19937_64 rng(13);
  for (int m = -2; m <= 2; ++m) {
    for (int i = 0; i < 10; ++i) {
      const double a = test_util::uniform(rng, 0.2, 2.5);
      const double b = test_util::uniform(rng, 0.2, 2.5);
      const double c = a + b + m;
      if (c <= 0.1) continue;
      const double z = test_util::uniform(rng, 0.76, 0.93);
      const double ref = series_oracle(a, b, c, z);
      const double got = specfun::hyp2f1(HypParams(a, b, c), z);
      CHECK(got == doctest::Approx(ref).epsilon(1e-11));
    }
  }
}

TEST_CASE("hyp2f1: deep z near 1 in the integer case stays accurate") {
  // n = 4 Green-kernel parameters: c - a - b = -1
  const HypParams p(2.25, 1.25, 2.5);
  const double z = 1.0 - 1e-8;
  const double lim = specfun::limit_ratio_at_one(p);
  const double got = specfun::hyp2f1(p, z);
  CHECK(got == doctest::Approx(lim * std::pow(1.0 - z, -1.0)).epsilon(1e-6));
}

TEST_CASE("hyp2f1_at_one: Gauss summation") {
  CHECK(specfun::hyp2f1_at_one(HypParams(0.5, 0.5, 2.0)) ==
        doctest::Approx(4.0 / specfun::kPi).epsilon(1e-12));
  CHECK(specfun::hyp2f1_at_one(HypParams(0.0, 1.7, 2.4)) ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(specfun::hyp2f1_at_one(HypParams(1, 1, 2)),
                  std::domain_error);
}

TEST_CASE("hyp2f1_at_one: reflected-parameter identity") {
  // F(1-a,1-b;c+1-a-b;1) = Gamma(c-1)Gamma(c+1-a-b)/(Gamma(c-a)Gamma(c-b))
  const double a = -0.5, b = 0.5, c = 1.5;
  const double lhs =
      specfun::hyp2f1_at_one(HypParams(1.0 - a, 1.0 - b, c + 1.0 - a - b));
  const double rhs = specfun::gamma(c - 1.0) * specfun::gamma(c + 1.0 - a - b) /
                     (specfun::gamma(c - a) * specfun::gamma(c - b));
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  // series-limit oracle: evaluate close to 1
  const double near = specfun::hyp2f1(HypParams(1.0 - a, 1.0 - b, c + 1.0 - a - b),
                                      1.0 - 1e-7);
  CHECK(near == doctest::Approx(lhs).epsilon(2e-3));
}

TEST_CASE("limit_ratio_at_one: examples and domain error") {
  // ((alpha+n)/2,(alpha+2)/2,alpha+2)
  {
    const int n = 4;
    const double alpha = 0.0;
    const HypParams p((alpha + n) / 2.0, (alpha + 2) / 2.0, alpha + 2);
    CHECK(specfun::limit_ratio_at_one(p) == doctest::Approx(1.0).epsilon(1e-12));
  }
  {
    const int n = 3;
    const double alpha = 1.0;
    const HypParams p((alpha + n) / 2.0, (alpha + 2) / 2.0, alpha + 2);
    CHECK(specfun::limit_ratio_at_one(p) == doctest::Approx(4.0).epsilon(1e-12));
    // cross-check against F near 1 divided by (1-z)^{c-a-b}
    const double z = 1.0 - 1e-6;
    const double d = p.c - p.a - p.b;
    const double ratio = specfun::hyp2f1(p, z) / std::pow(1.0 - z, d);
    CHECK(ratio == doctest::Approx(4.0).epsilon(5e-3));
  }
  CHECK_THROWS_AS(specfun::limit_ratio_at_one(HypParams(0.25, 0.25, 1.0)),
                  std::domain_error);
}

TEST_CASE("ode_residual: constants and series solutions") {
  // a = 0 and constant w: every term vanishes
  const HypParams p0(0.0, 1.3, 2.0);
  CHECK(specfun::ode_residual(p0, [](double) { return 3.5; }, 0.4) == 0.0);

  const HypParams p(1, 1, 2);
  const auto w = [&](double z) { return specfun::hyp2f1(p, z); };
  CHECK(std::abs(specfun::ode_residual(p, w, 0.3)) < 1e-6);

  // X2 about z = 1 solves the same equation (c-a-b = 1 here, so the X1
  // branch is the flagged one)
  const HypParams ps(-0.5, 1.0, 1.5);
  const auto x2 = [&](double z) {
    return specfun::solutions_at_one(ps, z).second;
  };
  CHECK(std::abs(specfun::ode_residual(ps, x2, 0.6, 1e-4)) < 1e-6);
}

TEST_CASE("ode_residual: refines at order >= 1.8 in the step") {
  const HypParams p(1.2, 0.7, 2.3);
  const auto w = [&](double z) { return specfun::hyp2f1(p, z); };
  const double r1 = std::abs(specfun::ode_residual(p, w, 0.35, 1e-3));
  const double r2 = std::abs(specfun::ode_residual(p, w, 0.35, 5e-4));
  const double order = std::log2(r1 / r2);
  CHECK(order >= 1.8);
}

TEST_CASE("solutions_at_one: independent pair and degeneracies") {
  // c = a+b: the two branches coincide
  {
    const HypParams p(0.7, 0.8, 1.5);
    const auto [x1, x2] = specfun::solutions_at_one(p, 0.4);
    CHECK(x1 == x2);
    CHECK(x1 == doctest::Approx(specfun::hyp2f1(HypParams(0.7, 0.8, 1.0), 0.6))
                    .epsilon(1e-13));
  }
  // both branches solve the ODE
  {
    const HypParams p(-0.5, 0.5, 1.75);
    const auto w1 = [&](double z) { return specfun::solutions_at_one(p, z).first; };
    const auto w2 = [&](double z) { return specfun::solutions_at_one(p, z).second; };
    CHECK(std::abs(specfun::ode_residual(p, w1, 0.5, 1e-4)) < 1e-6);
    CHECK(std::abs(specfun::ode_residual(p, w2, 0.5, 1e-4)) < 1e-6);
  }
  // X2 -> 0 as z -> 1- when c-a-b > 0
  {
    const HypParams p(-0.5, 0.5, 1.75);  // c-a-b = 1.75
    CHECK(std::abs(specfun::solutions_at_one(p, 0.99999).second) < 1e-8);
  }
  // nonzero integer c-a-b: the degenerate branch is flagged with NaN
  {
    const auto [x1, x2] = specfun::solutions_at_one(HypParams(0.25, 0.25, 3.5), 0.5);
    CHECK(std::isnan(x1));  // c-a-b = 3: the X1 parameter 1-d is -2
    CHECK(std::isfinite(x2));
  }
}

TEST_CASE("property: contiguous derivative identity in c") {
  // d/dx [x^{c-1} F(a,b;c;x)] = (c-1) x^{c-2} F(a,b;c-1;x)
  std::mt19937_64 rng(99);
  double worst = 0.0;
  for (int i = 0; i < 40; ++i) {
    const double a = test_util::uniform(rng, -2.0, 2.0);
    const double b = test_util::uniform(rng, -2.0, 2.0);
    const double c = test_util::uniform(rng, 1.3, 5.0);
    const double x = test_util::uniform(rng, 0.1, 0.8);
    const double h = 1e-5;
    const auto f = [&](double t) {
      return std::pow(t, c - 1.0) * specfun::hyp2f1(HypParams(a, b, c), t);
    };
    const double lhs = (f(x + h) - f(x - h)) / (2.0 * h);
    const double rhs = (c - 1.0) * std::pow(x, c - 2.0) *
                       specfun::hyp2f1(HypParams(a, b, c - 1.0), x);
    if (std::abs(rhs) < 1e-6) continue;
    worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("property: Euler transformation about z = 1") {
  // (1-x)^{c-a-b} F(c-a,c-b;c+1-a-b;1-x)
  //   = x^{1-c} (1-x)^{c-a-b} F(1-a,1-b;c+1-a-b;1-x)
  std::mt19937_64 rng(1234);
  double worst = 0.0;
  int checked = 0;
  while (checked < 60) {
    const double a = test_util::uniform(rng, -2.0, 2.0);
    const double b = test_util::uniform(rng, -2.0, 2.0);
    const double c = test_util::uniform(rng, 0.6, 3.5);
    const double upper = c + 1.0 - a - b;
    if (upper < 0.3) continue;  // keep the shared c-parameter sane
    const double x = test_util::uniform(rng, 0.05, 0.95);
    const double pre = std::pow(1.0 - x, c - a - b);
    const double lhs =
        pre * specfun::hyp2f1(HypParams(c - a, c - b, upper), 1.0 - x);
    const double rhs = std::pow(x, 1.0 - c) * pre *
                       specfun::hyp2f1(HypParams(1.0 - a, 1.0 - b, upper), 1.0 - x);
    if (std::abs(rhs) < 1e-8) continue;
    worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
    ++checked;
  }
  CHECK(worst < 1e-9);
}
