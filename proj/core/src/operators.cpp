#include "talpha/operators.hpp"

#include <cmath>

#include "talpha/moebius.hpp"

namespace talpha::operators {

namespace {

// Shrink the step so the stencil stays strictly inside the ball; report
// when the requested step was too large for the point.
double effective_step(const Vec& x, double h, Warnings* warnings) {
  const double gap = 1.0 - norm(x);
  if (gap <= 2.0 * h) {
    if (warnings)
      warnings->push_back("finite-difference step clamped near the sphere "
                          "(1-|x| = " + std::to_string(gap) + ")");
    return gap / 4.0;
  }
  return h;
}

Vec gradient_fd(const ScalarField& u, const Vec& x, double h) {
  Vec g(x.size());
  Vec probe = x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + h;
    const double up = u.value(probe);
    probe[i] = x[i] - h;
    const double um = u.value(probe);
    probe[i] = x[i];
    g[i] = (up - um) / (2.0 * h);
  }
  return g;
}

double laplacian_fd(const ScalarField& u, const Vec& x, double h) {
  const double u0 = u.value(x);
  double acc = 0.0;
  Vec probe = x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + h;
    const double up = u.value(probe);
    probe[i] = x[i] - h;
    const double um = u.value(probe);
    probe[i] = x[i];
    acc += (up - 2.0 * u0 + um) / (h * h);
  }
  return acc;
}

bool near_boundary_shell(const Vec& x) { return norm(x) >= 0.9; }

}  // namespace

Vec gradient_at(const ScalarField& u, const Vec& x, Warnings* warnings) {
  if (u.gradient) return u.gradient(x);
  const double h = effective_step(x, u.fd_step, warnings);
  Vec g = gradient_fd(u, x, h);
  if (near_boundary_shell(x)) {
    // one Richardson pass: (4 D(h/2) - D(h)) / 3
    const Vec g2 = gradient_fd(u, x, h / 2.0);
    for (std::size_t i = 0; i < g.size(); ++i)
      g[i] = (4.0 * g2[i] - g[i]) / 3.0;
  }
  return g;
}

double laplacian_at(const ScalarField& u, const Vec& x, Warnings* warnings) {
  if (u.laplacian) return u.laplacian(x);
  const double h = effective_step(x, u.fd_step, warnings);
  double l = laplacian_fd(u, x, h);
  if (near_boundary_shell(x)) {
    const double l2 = laplacian_fd(u, x, h / 2.0);
    l = (4.0 * l2 - l) / 3.0;
  }
  return l;
}

double radial_derivative(const ScalarField& u, const Vec& x,
                         Warnings* warnings) {
  const Vec g = gradient_at(u, x, warnings);
  return dot(x, g);
}

double t_alpha_apply(const Params& p, const ScalarField& u, const Vec& x,
                     Warnings* warnings) {
  const double r2 = norm_sq(x);
  const double lap = laplacian_at(u, x, warnings);
  const double rad = radial_derivative(u, x, warnings);
  return (1.0 - r2) * lap + 2.0 * p.alpha * rad +
         (p.n - 2.0 - p.alpha) * p.alpha * u.value(x);
}

double delta_gamma_apply(double gamma, const ScalarField& u, const Vec& x,
                         Warnings* warnings) {
  const int n = static_cast<int>(x.size());
  const double r2 = norm_sq(x);
  const double lap = laplacian_at(u, x, warnings);
  const double rad = radial_derivative(u, x, warnings);
  return (1.0 - r2) * ((1.0 - r2) / 4.0 * lap + gamma * rad +
                       gamma * (n / 2.0 - 1.0 - gamma) * u.value(x));
}

double delta_h_apply(const ScalarField& u, const Vec& x, Warnings* warnings) {
  const int n = static_cast<int>(x.size());
  const double r2 = norm_sq(x);
  const double lap = laplacian_at(u, x, warnings);
  const double rad = radial_derivative(u, x, warnings);
  return (1.0 - r2) * (1.0 - r2) * lap + 2.0 * (n - 2.0) * (1.0 - r2) * rad;
}

double invariance_residual(const Params& p, const ScalarField& u,
                           const BallPoint& x, const BallPoint& y) {
  const double power = p.n - 2.0 - p.alpha;
  ScalarField v;
  v.value = [&u, &x, power](const Vec& yy) {
    const Vec image = moebius::moebius_map(x.coords(), yy);
    const double br = moebius::bracket(x.coords(), yy);
    return u.value(image) / std::pow(br, power);
  };
  v.fd_step = u.fd_step;

  const double lhs = t_alpha_apply(p, v, y.coords());

  const Vec image = moebius::moebius_map(x.coords(), y.coords());
  const double br = moebius::bracket(x.coords(), y.coords());
  const double rhs = (1.0 - x.norm() * x.norm()) /
                     std::pow(br, p.n - p.alpha) *
                     t_alpha_apply(p, u, image);
  return lhs - rhs;
}

}  // namespace talpha::operators
