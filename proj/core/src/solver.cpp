#include "talpha/solver.hpp"

#include <chrono>
#include <cmath>

#include "talpha/moebius.hpp"
#include "talpha/specfun.hpp"

namespace talpha::solver {

namespace {

double mean_on_sphere(const quadrature::SphereRule& rule,
                      const std::function<double(const SpherePoint&)>& f) {
  return quadrature::integrate_sphere(rule, f);
}

}  // namespace

double poisson_integral(const Params& p,
                        const std::function<double(const SpherePoint&)>& phi,
                        const BallPoint& x, const quadrature::SphereRule& rule,
                        Warnings* warnings) {
  if (warnings && (1.0 - x.norm()) * rule.order < 10.0)
    warnings->push_back(
        "poisson_integral: kernel under-resolved at |x| = " +
        std::to_string(x.norm()) + " for sphere order " +
        std::to_string(rule.order));
  const double c = kernels::calibrate_c_alpha(p);
  const double wpow = std::pow(1.0 - x.norm() * x.norm(), 1.0 + p.alpha);
  const Vec& xc = x.coords();
  return quadrature::integrate_sphere(rule, [&](const SpherePoint& z) {
    const double d = dist(xc, z.coords());
    return c * wpow / std::pow(d, p.n + p.alpha) * phi(z);
  });
}

double green_potential(const Params& p,
                       const std::function<double(const Vec&)>& psi,
                       const BallPoint& x, const quadrature::BallRule& rule) {
  const double one_minus_x2 = 1.0 - x.norm() * x.norm();
  const Vec& xc = x.coords();
  const kernels::RadialGreen green(p);
  // ball rules are radial-major products, so consecutive nodes share |z|
  double cached_s = -1.0, cached_density = 0.0;
  return quadrature::integrate_ball(rule, [&](const BallPoint& z) {
    const double s = z.norm();
    if (s != cached_s) {
      cached_s = s;
      cached_density = green(s) * std::pow(1.0 - s * s, -p.alpha - 1.0);
    }
    const double br = moebius::bracket(xc, z.coords());
    const Vec image = moebius::moebius_map(xc, z.coords());
    return one_minus_x2 * std::pow(br, p.alpha - p.n) * psi(image) *
           cached_density;
  });
}

DirectPotential green_potential_direct(
    const Params& p, const std::function<double(const Vec&)>& psi,
    const BallPoint& x, const quadrature::BallRule& rule) {
  DirectPotential out;
  double boundary_scale = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const BallPoint& y = rule.nodes[i];
    if (dist(x.coords(), y.coords()) < 1e-12) {
      ++out.skipped_nodes;
      continue;
    }
    const double w = 1.0 - y.norm() * y.norm();
    const double pv = psi(y.coords());
    if (y.norm() > 0.99)
      boundary_scale = std::max(boundary_scale, std::abs(pv) * w);
    out.value += rule.weights[i] * pv * kernels::green_rep_kernel(p, x, y) *
                 std::pow(w, -p.alpha - 1.0);
  }
  // |psi| growing faster than (1-|y|^2)^{-1} cannot be resolved by the rule
  out.non_integrable_flag = boundary_scale > 1e3;
  return out;
}

kernels::SignAudit run_sign_audit(const Params& p,
                                  const quadrature::BallRule& rule) {
  const fields::Manufactured m =
      fields::manufactured_case(p, "one-minus-r2");
  // u(0) = 1 and the trace vanishes, so the measured Green factor is
  // 1 / int (T_alpha u) G_alpha (1-|x|^2)^{-alpha-1} dV.
  const kernels::RadialGreen green(p);
  double cached_s = -1.0, cached_density = 0.0;
  const double vol = quadrature::integrate_ball(rule, [&](const BallPoint& y) {
    const double s = y.norm();
    if (s != cached_s) {
      cached_s = s;
      cached_density = green(s) * std::pow(1.0 - s * s, -p.alpha - 1.0);
    }
    return m.t_alpha_u(y.coords()) * cached_density;
  });
  const kernels::KernelConstants kc = kernels::constants(p);
  kernels::SignAudit audit;
  const double measured = 1.0 / vol;
  audit.green_sign = measured > 0.0 ? 1 : -1;
  audit.measured_scale_ratio = std::abs(measured) / kc.green_normalizer;
  audit.notes = "measured factor " + std::to_string(measured) +
                " vs green_normalizer " + std::to_string(kc.green_normalizer);
  return audit;
}

std::vector<double> dirichlet_solve(const DirichletProblem& prob,
                                    const std::vector<BallPoint>& eval_points,
                                    const quadrature::SphereRule& sphere_rule,
                                    const quadrature::BallRule& ball_rule,
                                    Warnings* warnings) {
  const Params& p = prob.params;
  if (prob.psi_bound_check) {
    const double M = *prob.psi_bound_check;
    for (const BallPoint& y : ball_rule.nodes) {
      const double bound = M * (1.0 - y.norm() * y.norm());
      if (std::abs(prob.psi(y.coords())) > bound + 1e-12)
        throw std::runtime_error(
            "dirichlet_solve: |psi| <= M(1-|x|^2) violated at |x| = " +
            std::to_string(y.norm()));
    }
  }
  const kernels::KernelConstants kc = kernels::constants(p);
  const kernels::SignAudit audit = run_sign_audit(p, ball_rule);
  const double factor = audit.green_sign * kc.green_normalizer;
  std::vector<double> out;
  out.reserve(eval_points.size());
  for (const BallPoint& x : eval_points) {
    const double pterm =
        poisson_integral(p, prob.phi, x, sphere_rule, warnings);
    const double gterm = green_potential(p, prob.psi, x, ball_rule);
    out.push_back(pterm + factor * gterm);
  }
  return out;
}

double dirichlet_solve_hyperbolic_at(const DirichletProblem& prob,
                                     const BallPoint& x,
                                     const quadrature::SphereRule& sphere_rule,
                                     const quadrature::BallRule& ball_rule) {
  const Params& p = prob.params;
  if (std::abs(p.alpha - (p.n - 2.0)) > 1e-12)
    throw std::invalid_argument(
        "dirichlet_solve_hyperbolic_at: requires alpha = n-2");
  const int n = p.n;
  // matching constant between the radial Green function and g(.)
  const double s0 = 0.5;
  const double ratio =
      kernels::green_radial(p, s0) / kernels::hyperbolic_g_to_one(s0, n);
  const double factor =
      ratio / ((n - 1.0) * quadrature::sphere_area(n));

  const double pterm =
      quadrature::integrate_sphere(sphere_rule, [&](const SpherePoint& t) {
        return kernels::poisson_szego(x, t, n) * prob.phi(t);
      });
  // psi_h = Delta_h u = (1-|y|^2) psi, pulled back by the hyperbolic-volume
  // invariance of (1-|z|^2)^{-n} dV
  const Vec& xc = x.coords();
  double cached_s = -1.0, cached_density = 0.0;
  const double gterm =
      quadrature::integrate_ball(ball_rule, [&](const BallPoint& z) {
        const double s = z.norm();
        if (s != cached_s) {
          cached_s = s;
          cached_density = kernels::hyperbolic_g_to_one(s, n) *
                           std::pow(1.0 - s * s, -static_cast<double>(n));
        }
        const Vec image = moebius::moebius_map(xc, z.coords());
        const double img_w = 1.0 - norm_sq(image);
        return cached_density * img_w * prob.psi(image);
      });
  return pterm + factor * gterm;
}

double mean_value_center(const Params& p, const operators::ScalarField& u,
                         const quadrature::SphereRule& sphere_rule,
                         const quadrature::BallRule& ball_rule, int green_sign,
                         const std::function<double(const Vec&)>& psi) {
  const kernels::KernelConstants kc = kernels::constants(p);
  const double sphere_term =
      kc.c_alpha_calibrated *
      mean_on_sphere(sphere_rule,
                     [&](const SpherePoint& z) { return u.value(z.coords()); });
  const kernels::RadialGreen green(p);
  double cached_s = -1.0, cached_density = 0.0;
  const double vol = quadrature::integrate_ball(ball_rule, [&](const BallPoint& y) {
    const double s = y.norm();
    if (s != cached_s) {
      cached_s = s;
      cached_density = green(s) * std::pow(1.0 - s * s, -p.alpha - 1.0);
    }
    const double tau = psi ? psi(y.coords())
                           : operators::t_alpha_apply(p, u, y.coords());
    return tau * cached_density;
  });
  return sphere_term + green_sign * kc.green_normalizer * vol;
}

double sphere_mean_value(const Params& p, const operators::ScalarField& u,
                         double r, const quadrature::SphereRule& sphere_rule,
                         const quadrature::BallRule& ball_rule_on_rball,
                         const std::function<double(const Vec&)>& psi) {
  if (!(r > 0.0 && r < 1.0))
    throw std::domain_error("sphere_mean_value: r must lie in (0,1)");
  const kernels::KernelConstants kc = kernels::constants(p);
  const specfun::HypParams hp((p.alpha + p.n) / 2.0, (p.alpha + 2.0) / 2.0,
                              p.alpha + 1.0);
  const double hyp_factor = specfun::hyp2f1(hp, 1.0 - r * r);
  const double first = kc.c_alpha_calibrated * std::pow(r, p.n) * hyp_factor *
                       mean_on_sphere(sphere_rule, [&](const SpherePoint& z) {
                         return u.value(scale(r, z.coords()));
                       });
  const double g_at_r = kernels::green_radial(p, r);
  const kernels::RadialGreen green(p);
  double cached_s = -1.0, cached_g = 0.0;
  const double second =
      quadrature::integrate_ball(ball_rule_on_rball, [&](const BallPoint& y) {
        const double s = y.norm();
        if (s != cached_s) {
          cached_s = s;
          cached_g = green(s);
        }
        const double w = 1.0 - s * s;
        const double tau = psi ? psi(y.coords())
                               : operators::t_alpha_apply(p, u, y.coords());
        return tau * (cached_g - g_at_r) * std::pow(w, -p.alpha - 1.0);
      });
  const double third =
      (p.n - 2.0 - p.alpha) * p.alpha * g_at_r *
      quadrature::integrate_ball(ball_rule_on_rball, [&](const BallPoint& y) {
        const double w = 1.0 - y.norm() * y.norm();
        return u.value(y.coords()) * std::pow(w, -p.alpha - 1.0);
      });
  return first + kc.green_normalizer * (second + third);
}

double green_identity_residual(const Params& p, const operators::ScalarField& u,
                               const operators::ScalarField& v, double r,
                               const quadrature::SphereRule& sphere_rule,
                               const quadrature::BallRule& ball_rule,
                               std::optional<double> inner_r) {
  const double area = quadrature::sphere_area(p.n);
  const auto boundary_term = [&](double rho) {
    // unnormalized surface measure: area(S^{n-1}) times the sigma mean
    const double mean =
        mean_on_sphere(sphere_rule, [&](const SpherePoint& z) {
          const Vec x = scale(rho, z.coords());
          const double urv = u.value(x) * operators::radial_derivative(v, x);
          const double vru = v.value(x) * operators::radial_derivative(u, x);
          return urv - vru;
        });
    return std::pow(rho, p.n - 2.0) * std::pow(1.0 - rho * rho, -p.alpha) *
           area * mean;
  };
  double lhs = boundary_term(r);
  if (inner_r) lhs -= boundary_term(*inner_r);
  const double rhs = quadrature::integrate_ball(ball_rule, [&](const BallPoint& y) {
    const double w = 1.0 - y.norm() * y.norm();
    const double utv = u.value(y.coords()) *
                       operators::t_alpha_apply(p, v, y.coords());
    const double vtu = v.value(y.coords()) *
                       operators::t_alpha_apply(p, u, y.coords());
    return (utv - vtu) * std::pow(w, -p.alpha - 1.0);
  });
  return lhs - rhs;
}

VerifyReport verify_representation(
    const Params& p, const fields::Manufactured& m,
    const std::vector<BallPoint>& grid,
    const std::vector<std::pair<int, int>>& order_levels) {
  VerifyReport report;
  report.case_name = m.name;
  const kernels::KernelConstants kc = kernels::constants(p);
  DirichletProblem prob{p, m.boundary, m.t_alpha_u, std::nullopt};

  for (std::size_t level = 0; level < order_levels.size(); ++level) {
    const auto [sphere_order, radial_order] = order_levels[level];
    const auto t0 = std::chrono::steady_clock::now();
    const quadrature::SphereRule srule = quadrature::sphere_rule(p.n, sphere_order);
    const quadrature::BallRule brule = quadrature::ball_rule(p, radial_order, sphere_order);
    const std::vector<double> values =
        dirichlet_solve(prob, grid, srule, brule);
    double sup = 0.0;
    std::vector<std::pair<Vec, double>> table;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double err = std::abs(values[i] - m.u.value(grid[i].coords()));
      sup = std::max(sup, err);
      table.emplace_back(grid[i].coords(), err);
    }
    const auto t1 = std::chrono::steady_clock::now();
    const double secs = std::chrono::duration<double>(t1 - t0).count();
    report.convergence.push_back(
        {sphere_order, radial_order, sup, secs});
    if (level + 1 == order_levels.size()) {
      report.sup_error = sup;
      report.residual_table = std::move(table);
      report.sign_audit_outcome = run_sign_audit(p, brule).green_sign;
    }
  }
  report.notes = "green_normalizer = " + std::to_string(kc.green_normalizer);
  return report;
}

std::vector<BallPoint> default_grid(int n) {
  std::vector<Vec> dirs;
  // nonzero sign-lattice directions, enumerated in a fixed order
  const int total = 1;
  (void)total;
  std::vector<int> digits(n, 0);
  while (true) {
    // interpret digits base-3 as {-1,0,1}
    Vec d(n);
    bool nonzero = false;
    for (int i = 0; i < n; ++i) {
      d[i] = digits[i] - 1.0;
      if (d[i] != 0.0) nonzero = true;
    }
    if (nonzero) {
      const double r = norm(d);
      for (double& c : d) c /= r;
      dirs.push_back(std::move(d));
    }
    int k = 0;
    while (k < n && ++digits[k] == 3) digits[k++] = 0;
    if (k == n) break;
  }
  const std::vector<double> radii = {0.0, 0.2, 0.4, 0.6, 0.8};
  std::vector<BallPoint> grid;
  grid.push_back(BallPoint(Vec(n, 0.0)));
  for (double r : radii) {
    if (r == 0.0) continue;
    for (const Vec& d : dirs) grid.push_back(BallPoint(scale(r, d)));
  }
  return grid;
}

}  // namespace talpha::solver
