#include <doctest.h>

#include <cmath>
#include <random>

#include "talpha/fields.hpp"
#include "talpha/kernels.hpp"
#include "talpha/quadrature.hpp"
#include "talpha/solver.hpp"
#include "test_util.hpp"

using namespace talpha;

namespace {

quadrature::SphereRule srule(int n, int order) {
  return quadrature::sphere_rule(n, order);
}

}  // namespace

TEST_CASE("poisson_integral: classical checks at alpha = 0, n = 3") {
  const Params p(3, 0.0);
  const auto rule = srule(3, 32);
  // harmonic measure totals 1
  const BallPoint x(Vec{0.5, 0.0, 0.0});
  CHECK(solver::poisson_integral(p, [](const SpherePoint&) { return 1.0; }, x,
                                 rule) == doctest::Approx(1.0).epsilon(1e-8));
  // center: c_cal * mean(phi)
  const BallPoint zero(Vec(3, 0.0));
  const auto phi = [](const SpherePoint& z) { return 2.0 + z.coords()[1]; };
  CHECK(solver::poisson_integral(p, phi, zero, rule) ==
        doctest::Approx(2.0).epsilon(1e-12));
  // degree-1 spherical harmonic extends to x1
  const BallPoint x3(Vec{0.3, 0.0, 0.0});
  CHECK(solver::poisson_integral(
            p, [](const SpherePoint& z) { return z.coords()[0]; }, x3, rule) ==
        doctest::Approx(0.3).epsilon(1e-8));
}

TEST_CASE("poisson_integral: under-resolution warning") {
  const Params p(3, 0.5);
  const auto rule = srule(3, 8);
  Warnings w;
  solver::poisson_integral(p, [](const SpherePoint&) { return 1.0; },
                           BallPoint(Vec{0.0, 0.0, 0.995}), rule, &w);
  CHECK(!w.empty());
}

TEST_CASE("green_potential: zero source and x = 0 reduction") {
  const Params p(3, 0.5);
  const auto brule = quadrature::ball_rule(p, 8, 10);
  const BallPoint x(Vec{0.2, -0.1, 0.3});
  CHECK(solver::green_potential(p, [](const Vec&) { return 0.0; }, x, brule) ==
        0.0);

  // at x = 0 the pullback is the plain radial integral
  const auto m = fields::manufactured_case(p, "one-minus-r2");
  const BallPoint zero(Vec(3, 0.0));
  const double pulled = solver::green_potential(p, m.t_alpha_u, zero, brule);
  const kernels::RadialGreen green(p);
  double direct = 0;
  for (std::size_t i = 0; i < brule.nodes.size(); ++i) {
    const double s = brule.nodes[i].norm();
    direct += brule.weights[i] * m.t_alpha_u(brule.nodes[i].coords()) *
              green(s) * std::pow(1.0 - s * s, -p.alpha - 1.0);
  }
  CHECK(pulled == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("green_potential_direct: agrees with the pullback away from nodes") {
  const Params p(3, 0.5);
  const auto brule = quadrature::ball_rule(p, 8, 10);
  const auto m = fields::manufactured_case(p, "one-minus-r2");
  const BallPoint zero(Vec(3, 0.0));
  const auto direct = solver::green_potential_direct(p, m.t_alpha_u, zero, brule);
  CHECK(direct.skipped_nodes == 0);
  CHECK(!direct.non_integrable_flag);
  const double pulled = solver::green_potential(p, m.t_alpha_u, zero, brule);
  CHECK(direct.value == doctest::Approx(pulled).epsilon(1e-10));
}

TEST_CASE("green_potential_direct: skips colliding nodes, flags bad psi") {
  const Params p(3, 0.5);
  const auto brule = quadrature::ball_rule(p, 6, 8);
  // aim exactly at a quadrature node
  const BallPoint at_node(brule.nodes[1000].coords());
  const auto r = solver::green_potential_direct(
      p, [](const Vec&) { return 1.0; }, at_node, brule);
  CHECK(r.skipped_nodes == 1);

  const auto bad = solver::green_potential_direct(
      p,
      [](const Vec& y) {
        const double w = 1.0 - norm_sq(y);
        return 1.0 / (w * w);
      },
      BallPoint(Vec(3, 0.0)), brule);
  CHECK(bad.non_integrable_flag);
}

TEST_CASE("sign audit: +1 with unit scale ratio across (n, alpha)") {
  for (int n : {3, 4}) {
    for (double alpha : {-0.5, 0.0, 0.5, 1.0}) {
      const Params p(n, alpha);
      const auto brule = quadrature::ball_rule(p, 8, 10);
      const auto audit = solver::run_sign_audit(p, brule);
      CHECK(audit.green_sign == 1);
      CHECK(audit.measured_scale_ratio == doctest::Approx(1.0).epsilon(1e-7));
    }
  }
}

TEST_CASE("dirichlet_solve: classical and manufactured cases") {
  // psi = 0, phi = 1, alpha = 0: u == 1
  {
    const Params p(3, 0.0);
    solver::DirichletProblem prob{p, [](const SpherePoint&) { return 1.0; },
                                  [](const Vec&) { return 0.0; }, std::nullopt};
    const auto pts = std::vector<BallPoint>{BallPoint(Vec{0.0, 0.0, 0.0}),
                                            BallPoint(Vec{0.4, 0.2, 0.0}),
                                            BallPoint(Vec{0.0, -0.6, 0.3})};
    const auto vals = solver::dirichlet_solve(prob, pts, srule(3, 24),
                                              quadrature::ball_rule(p, 8, 10));
    for (double v : vals) CHECK(v == doctest::Approx(1.0).epsilon(1e-6));
  }
  // manufactured u = 1-|x|^2 on a |x| <= 0.8 grid
  {
    const Params p(3, 0.5);
    const auto m = fields::manufactured_case(p, "one-minus-r2");
    solver::DirichletProblem prob{p, m.boundary, m.t_alpha_u, std::nullopt};
    const auto grid = solver::default_grid(3);
    const auto vals = solver::dirichlet_solve(prob, grid, srule(3, 24),
                                              quadrature::ball_rule(p, 12, 24));
    double sup = 0;
    for (std::size_t i = 0; i < grid.size(); ++i)
      sup = std::max(sup, std::abs(vals[i] - m.u.value(grid[i].coords())));
    CHECK(sup < 1e-3);
  }
}

TEST_CASE("dirichlet_solve: psi bound check is sampled and asserted") {
  const Params p(3, 0.5);
  solver::DirichletProblem prob{p, [](const SpherePoint&) { return 0.0; },
                                [](const Vec&) { return 1.0; }, 0.5};
  // |psi| = 1 > 0.5 (1-|x|^2) near the boundary
  CHECK_THROWS_AS(
      solver::dirichlet_solve(prob, {BallPoint(Vec(3, 0.0))}, srule(3, 8),
                              quadrature::ball_rule(p, 4, 4)),
      std::runtime_error);
}

TEST_CASE("dirichlet_solve: linearity in (phi, psi)") {
  const Params p(3, 1.0);
  const auto m1 = fields::manufactured_case(p, "one-minus-r2");
  const auto m2 = fields::manufactured_case(p, "x1");
  const auto sph = srule(3, 16);
  const auto ball = quadrature::ball_rule(p, 8, 16);
  const std::vector<BallPoint> pts{BallPoint(Vec{0.3, -0.2, 0.1})};

  solver::DirichletProblem prob1{p, m1.boundary, m1.t_alpha_u, std::nullopt};
  solver::DirichletProblem prob2{p, m2.boundary, m2.t_alpha_u, std::nullopt};
  const double a = 2.5, b = -1.25;
  solver::DirichletProblem combo{
      p,
      [&](const SpherePoint& z) {
        return a * m1.boundary(z) + b * m2.boundary(z);
      },
      [&](const Vec& y) { return a * m1.t_alpha_u(y) + b * m2.t_alpha_u(y); },
      std::nullopt};
  const double u1 = solver::dirichlet_solve(prob1, pts, sph, ball)[0];
  const double u2 = solver::dirichlet_solve(prob2, pts, sph, ball)[0];
  const double uc = solver::dirichlet_solve(combo, pts, sph, ball)[0];
  CHECK(uc == doctest::Approx(a * u1 + b * u2).epsilon(1e-11));
}

TEST_CASE("hyperbolic assembly matches the general path at alpha = n-2") {
  const Params p(3, 1.0);
  const auto m = fields::manufactured_case(p, "one-minus-r2");
  solver::DirichletProblem prob{p, m.boundary, m.t_alpha_u, std::nullopt};
  const auto sph = srule(3, 24);
  const auto ball = quadrature::ball_rule(p, 10, 16);
  for (const Vec& xv : {Vec{0.4, -0.2, 0.1}, Vec{0.0, 0.0, 0.0}, Vec{0.0, 0.7, 0.0}}) {
    const BallPoint x(xv);
    const double gen = solver::dirichlet_solve(prob, {x}, sph, ball)[0];
    const double hyp = solver::dirichlet_solve_hyperbolic_at(prob, x, sph, ball);
    CHECK(hyp == doctest::Approx(gen).epsilon(1e-6));
    CHECK(hyp == doctest::Approx(m.u.value(xv)).epsilon(1e-4));
  }
  CHECK_THROWS_AS(solver::dirichlet_solve_hyperbolic_at(
                      solver::DirichletProblem{Params(3, 0.5), prob.phi,
                                               prob.psi, std::nullopt},
                      BallPoint(Vec(3, 0.0)), sph, ball),
                  std::invalid_argument);
}

TEST_CASE("mean_value_center: calibration regression and manufactured cases") {
  const auto sph = srule(3, 24);
  // radial regular solution: u(0) = 1 (the calibration identity itself)
  {
    const Params p(3, 0.8);
    const auto ball = quadrature::ball_rule(p, 8, 12);
    const auto u = fields::radial_regular_solution(p);
    const double rhs = solver::mean_value_center(
        p, u, sph, ball, +1, [](const Vec&) { return 0.0; });
    CHECK(rhs == doctest::Approx(1.0).epsilon(1e-8));
  }
  // u = 1-|x|^2
  for (int n : {3, 4}) {
    for (double alpha : {0.0, 0.5, 1.0}) {
      const Params p(n, alpha);
      const auto m = fields::manufactured_case(p, "one-minus-r2");
      const auto ball = quadrature::ball_rule(p, 8, 12);
      const double rhs = solver::mean_value_center(p, m.u, srule(n, 16), ball,
                                                   +1, m.t_alpha_u);
      CHECK(rhs == doctest::Approx(1.0).epsilon(1e-4));
    }
  }
  // T_alpha-harmonic Poisson extension (kernel-slice case): psi = 0
  {
    const Params p(3, 1.0);
    const auto ext = fields::poisson_extension_case(p, srule(3, 48));
    const auto ball = quadrature::ball_rule(p, 6, 8);
    const double u0 = ext.u.value(Vec(3, 0.0));
    const double rhs =
        solver::mean_value_center(p, ext.u, sph, ball, +1, ext.t_alpha_u);
    CHECK(std::abs(rhs - u0) / std::abs(u0) < 1e-5);
  }
}

TEST_CASE("sphere_mean_value: the three pinned regimes") {
  const auto sph = srule(3, 24);
  // alpha = 0, harmonic u = x1^2 - x2^2: u(0) = 0 reproduced
  {
    const Params p(3, 0.0);
    const auto m = fields::manufactured_case(p, "x1sq-x2sq");
    const auto ball = quadrature::ball_rule_interval(p, 0.0, 0.7, 8, 16);
    const double rhs =
        solver::sphere_mean_value(p, m.u, 0.7, sph, ball, m.t_alpha_u);
    CHECK(std::abs(rhs) < 1e-6);
  }
  // alpha = n-2: agrees with the mean value assembled from the hyperbolic kernels
  {
    const Params p(3, 1.0);
    const double r = 0.7;
    const auto m = fields::manufactured_case(p, "one-minus-r2");
    const auto ball = quadrature::ball_rule_interval(p, 0.0, r, 10, 24);
    const double rhs =
        solver::sphere_mean_value(p, m.u, r, sph, ball, m.t_alpha_u);
    CHECK(rhs == doctest::Approx(m.u.value(Vec(3, 0.0))).epsilon(1e-8));

    // independent evaluation through g(|x|, r)
    const double mean = quadrature::integrate_sphere(sph, [&](const SpherePoint& z) {
      return m.u.value(scale(r, z.coords()));
    });
    const double C =
        kernels::green_radial(p, 0.5) / kernels::hyperbolic_g_to_one(0.5, 3);
    double cached_s = -1, cached_g = 0;
    const double vol = quadrature::integrate_ball(ball, [&](const BallPoint& y) {
      const double s = y.norm();
      if (s != cached_s) {
        cached_s = s;
        cached_g = kernels::hyperbolic_g(s, r, 3);
      }
      const double w = 1.0 - s * s;
      return cached_g * (w * m.t_alpha_u(y.coords())) * std::pow(w, -3.0);
    });
    const double hyp_form =
        mean + C / (2.0 * quadrature::sphere_area(3)) * vol;
    CHECK(rhs == doctest::Approx(hyp_form).epsilon(1e-9));
  }
  // general alpha, u == 1: residual reported (and in fact small)
  {
    const Params p(3, 0.6);
    const auto ball = quadrature::ball_rule_interval(p, 0.0, 0.7, 8, 16);
    const double rhs = solver::sphere_mean_value(
        p, fields::constant(1.0, 3), 0.7, sph, ball);
    MESSAGE("u == 1 residual at alpha = 0.6: ", rhs - 1.0);
    CHECK(rhs == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("green_identity_residual: ball and annulus forms") {
  // u = v: identically zero
  {
    const Params p(3, 0.5);
    const auto u = fields::one_minus_r2(3);
    const auto ball = quadrature::ball_rule_interval(p, 0.0, 0.7, 8, 16);
    CHECK(solver::green_identity_residual(p, u, u, 0.7, srule(3, 16), ball) ==
          doctest::Approx(0.0).epsilon(1e-14));
  }
  // u = 1, v = 1-|x|^2, n = 3, alpha = 1, r = 0.7
  {
    const Params p(3, 1.0);
    const auto u = fields::constant(1.0, 3);
    const auto v = fields::one_minus_r2(3);
    const auto ball = quadrature::ball_rule_interval(p, 0.0, 0.7, 16, 32);
    const double res =
        solver::green_identity_residual(p, u, v, 0.7, srule(3, 32), ball);
    CHECK(std::abs(res) < 1e-6);
  }
  // annulus (0.1, 0.8) with v = G_alpha: the corrected two-boundary form
  {
    const Params p(3, 0.5);
    const auto u = fields::one_minus_r2(3);
    const auto g = fields::green_radial_field(p);
    const auto ball = quadrature::ball_rule_interval(p, 0.1, 0.8, 16, 32);
    const double res = solver::green_identity_residual(p, u, g, 0.8,
                                                       srule(3, 32), ball, 0.1);
    CHECK(std::abs(res) < 1e-5);
  }
}

TEST_CASE("verify_representation: sup error and monotone convergence") {
  const Params p(3, 0.5);
  const auto grid = solver::default_grid(3);
  const auto m = fields::manufactured_case(p, "x1");
  const auto report = solver::verify_representation(
      p, m, grid, {{8, 6}, {16, 10}, {32, 16}});
  REQUIRE(report.convergence.size() == 3);
  CHECK(report.convergence[1].sup_error <= report.convergence[0].sup_error);
  CHECK(report.convergence[2].sup_error <= report.convergence[1].sup_error);
  CHECK(report.sup_error < 1e-3);
  CHECK(report.sign_audit_outcome == 1);
  CHECK(report.residual_table.size() == grid.size());
}

TEST_CASE("boundary attainment: Lipschitz data at r = 0.999") {
  const Params p(3, 0.5);
  const SpherePoint z0(Vec{0.0, 0.0, 1.0});
  const auto phi = [&](const SpherePoint& z) {
    return dist(z.coords(), z0.coords());
  };
  double worst = 0;
  for (int k = 0; k < 4; ++k) {
    Vec dir(3, 0.0);
    if (k < 3)
      dir[k] = 1.0;
    else
      dir[2] = -1.0;
    const SpherePoint zd = SpherePoint::normalized(dir);
    Vec axis = zd.coords();
    const auto rule = quadrature::sphere_rule_pole_graded(3, 64, 1e-4, &axis);
    const BallPoint x(scale(0.999, zd.coords()));
    const double u = solver::poisson_integral(p, phi, x, rule);
    worst = std::max(worst, std::abs(u - phi(zd)));
  }
  CHECK(worst < 0.05);
}
