#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "talpha/kernels.hpp"
#include "talpha/quadrature.hpp"
#include "talpha/specfun.hpp"

using namespace talpha;

TEST_CASE("sphere_rule: moments") {
  for (int n : {3, 4, 5}) {
    const auto rule = quadrature::sphere_rule(n, 16);
    double wsum = 0, comp = 0;
    for (double w : rule.weights) {
      CHECK(w > 0.0);
      const double y = w - comp;
      const double t = wsum + y;
      comp = (t - wsum) - y;
      wsum = t;
    }
    CHECK(std::abs(wsum - 1.0) < 1e-13);

    const double m2 = quadrature::integrate_sphere(
        rule, [](const SpherePoint& z) { return z.coords()[0] * z.coords()[0]; });
    CHECK(m2 == doctest::Approx(1.0 / n).epsilon(1e-12));

    const double m1 = quadrature::integrate_sphere(
        rule, [](const SpherePoint& z) { return z.coords()[0]; });
    CHECK(std::abs(m1) < 1e-14);

    // degree-4 moment: int x1^4 dsigma = 3/(n(n+2))
    const double m4 = quadrature::integrate_sphere(
        rule, [](const SpherePoint& z) {
          const double t = z.coords()[0];
          return t * t * t * t;
        });
    CHECK(m4 == doctest::Approx(3.0 / (n * (n + 2.0))).epsilon(1e-12));
  }
}

TEST_CASE("ball_rule: volume and the |y|^{2-n} singularity") {
  for (int n : {3, 4}) {
    const Params p(n, 0.5);
    const auto rule = quadrature::ball_rule(p, 8, 8);
    for (double w : rule.weights) CHECK(w > 0.0);

    const double vol =
        quadrature::integrate_ball(rule, [](const BallPoint&) { return 1.0; });
    const double want =
        std::pow(specfun::kPi, n / 2.0) / specfun::gamma(n / 2.0 + 1.0);
    CHECK(vol == doctest::Approx(want).epsilon(1e-10));

    const double sing = quadrature::integrate_ball(rule, [n](const BallPoint& y) {
      return std::pow(y.norm(), 2.0 - n);
    });
    CHECK(sing == doctest::Approx(quadrature::sphere_area(n) / 2.0)
                      .epsilon(1e-6));
  }
}

TEST_CASE("ball_rule_interval: annulus volume by subtraction") {
  const Params p(3, 0.0);
  const auto rule = quadrature::ball_rule_interval(p, 0.25, 0.75, 10, 8);
  const double vol =
      quadrature::integrate_ball(rule, [](const BallPoint&) { return 1.0; });
  const double want = 4.0 * specfun::kPi / 3.0 * (std::pow(0.75, 3) - std::pow(0.25, 3));
  CHECK(vol == doctest::Approx(want).epsilon(1e-10));
}

TEST_CASE("integrate: constants and the hyperbolic kernel mass") {
  const auto rule = quadrature::sphere_rule(3, 24);
  CHECK(quadrature::integrate_sphere(
            rule, [](const SpherePoint&) { return 7.25; }) ==
        doctest::Approx(7.25).epsilon(1e-14));

  // P_h has unit sigma-mean at every interior point
  const BallPoint x(Vec{0.5, 0.0, 0.0});
  const double mass = quadrature::integrate_sphere(rule, [&](const SpherePoint& t) {
    return kernels::poisson_szego(x, t, 3);
  });
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));

  // weighted ball integrand 1-|y|^2 over the n=3 ball: 8 pi / 15
  const Params p(3, 0.0);
  const auto brule = quadrature::ball_rule(p, 8, 8);
  const double v = quadrature::integrate_ball(
      brule, [](const BallPoint& y) { return 1.0 - norm_sq(y.coords()); });
  CHECK(v == doctest::Approx(8.0 * specfun::kPi / 15.0).epsilon(1e-10));
}

TEST_CASE("integration failures carry the offending node") {
  const auto rule = quadrature::sphere_rule(3, 4);
  try {
    quadrature::integrate_sphere(rule, [](const SpherePoint&) -> double {
      throw std::runtime_error("boom");
    });
    FAIL("expected a throw");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("node") != std::string::npos);
  }
}

TEST_CASE("convergence: doubling the order gains at least 4x on P_alpha[f]") {
  const Params p(3, 1.0);
  const BallPoint x(Vec{0.5, 0.0, 0.0});
  const SpherePoint pole(Vec{0.0, 0.0, 1.0});
  const auto integrand = [&](const quadrature::SphereRule& rule) {
    return quadrature::integrate_sphere(rule, [&](const SpherePoint& z) {
      return kernels::poisson_kernel(p, x, z) * (1.0 + z.coords()[2]);
    });
  };
  const double ref = integrand(quadrature::sphere_rule(3, 96));
  const double e8 = std::abs(integrand(quadrature::sphere_rule(3, 8)) - ref);
  const double e16 = std::abs(integrand(quadrature::sphere_rule(3, 16)) - ref);
  const double e32 = std::abs(integrand(quadrature::sphere_rule(3, 32)) - ref);
  CHECK(e16 <= e8 / 4.0);
  // may hit the accuracy floor at order 32
  CHECK((e32 <= e16 / 4.0 || e32 < 1e-12));
}

TEST_CASE("determinism: identical inputs give bit-identical sums") {
  const auto rule = quadrature::sphere_rule(4, 10);
  const auto f = [](const SpherePoint& z) {
    return std::exp(z.coords()[0]) * std::cos(z.coords()[1]);
  };
  const double a = quadrature::integrate_sphere(rule, f);
  const double b = quadrature::integrate_sphere(rule, f);
  CHECK(a == b);
  const auto rule2 = quadrature::sphere_rule(4, 10);
  CHECK(quadrature::integrate_sphere(rule2, f) == a);
}

TEST_CASE("pole-graded rule resolves a boundary-concentrated kernel") {
  const Params p(3, 0.5);
  Vec axis{0.0, 0.0, 1.0};
  const auto graded = quadrature::sphere_rule_pole_graded(3, 16, 1e-5, &axis);
  double wsum = 0;
  for (double w : graded.weights) wsum += w;
  CHECK(std::abs(wsum - 1.0) < 1e-13);
  // mass of the Poisson kernel at r = 0.995 should be close to its r->1 value
  const BallPoint x(Vec{0.0, 0.0, 0.995});
  const double mass = quadrature::integrate_sphere(graded, [&](const SpherePoint& z) {
    return kernels::poisson_kernel(p, x, z);
  });
  CHECK(mass == doctest::Approx(1.0).epsilon(5e-3));
}

TEST_CASE("rules serialize to CSV and reload identically") {
  namespace fs = std::filesystem;
  const auto dir = fs::temp_directory_path() / "talpha_rule_io";
  fs::create_directories(dir);

  const auto rule = quadrature::sphere_rule(3, 6);
  const std::string path = (dir / "rule.csv").string();
  quadrature::save_rule_csv(rule, path);
  const auto loaded = quadrature::load_sphere_rule_csv(path);
  REQUIRE(loaded.nodes.size() == rule.nodes.size());
  CHECK(loaded.order == rule.order);
  CHECK(loaded.grading == rule.grading);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    CHECK(loaded.weights[i] == rule.weights[i]);
    CHECK(dist(loaded.nodes[i].coords(), rule.nodes[i].coords()) == 0.0);
  }

  // cache round trip: second call loads the file
  const auto c1 = quadrature::sphere_rule_cached(3, 6, dir.string());
  const auto c2 = quadrature::sphere_rule_cached(3, 6, dir.string());
  REQUIRE(c1.nodes.size() == c2.nodes.size());
  for (std::size_t i = 0; i < c1.nodes.size(); ++i)
    CHECK(c1.weights[i] == c2.weights[i]);

  const Params p(3, 1.0);
  const auto ball = quadrature::ball_rule_interval(p, 0.1, 0.9, 4, 4);
  const std::string bpath = (dir / "ball.csv").string();
  quadrature::save_rule_csv(ball, bpath);
  const auto bloaded = quadrature::load_ball_rule_csv(bpath);
  REQUIRE(bloaded.nodes.size() == ball.nodes.size());
  double v1 = 0, v2 = 0;
  for (std::size_t i = 0; i < ball.nodes.size(); ++i) {
    v1 += ball.weights[i];
    v2 += bloaded.weights[i];
  }
  CHECK(v1 == v2);
  fs::remove_all(dir);
}
