#include "talpha/estimates.hpp"

#include <cmath>

#include "talpha/moebius.hpp"
#include "talpha/solver.hpp"
#include "talpha/specfun.hpp"

namespace talpha::estimates {

ExponentFit fit_exponent(const std::vector<std::pair<double, double>>& samples) {
  if (samples.size() < 4)
    throw std::invalid_argument("fit_exponent: need at least 4 samples");
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  const std::size_t m = samples.size();
  for (const auto& [gap, value] : samples) {
    if (!(gap > 0.0) || !(value > 0.0))
      throw std::invalid_argument(
          "fit_exponent: samples must have positive 1-r and positive values");
    const double lx = std::log(gap), ly = std::log(value);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    syy += ly * ly;
  }
  const double det = m * sxx - sx * sx;
  if (std::abs(det) < 1e-14 * m * sxx)
    throw std::invalid_argument("fit_exponent: abscissae are not distinct");
  ExponentFit fit;
  fit.samples = samples;
  fit.fitted_exponent = (m * sxy - sx * sy) / det;
  const double ss_tot = syy - sy * sy / m;
  const double intercept = (sy - fit.fitted_exponent * sx) / m;
  double ss_res = 0;
  for (const auto& [gap, value] : samples) {
    const double pred = intercept + fit.fitted_exponent * std::log(gap);
    const double res = std::log(value) - pred;
    ss_res += res * res;
  }
  fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  double gmin = samples.front().first, gmax = gmin;
  for (const auto& s : samples) {
    gmin = std::min(gmin, s.first);
    gmax = std::max(gmax, s.first);
  }
  fit.window_r_min = 1.0 - gmax;
  fit.window_r_max = 1.0 - gmin;
  return fit;
}

double i_alpha(double r, double alpha, int n,
               const quadrature::SphereRule& rule) {
  if (!(r >= 0.0 && r < 1.0))
    throw std::domain_error("i_alpha: r must lie in [0,1)");
  Vec x(n, 0.0);
  x[n - 1] = r;
  Vec en(n, 0.0);
  en[n - 1] = 1.0;
  return quadrature::integrate_sphere(rule, [&](const SpherePoint& t) {
    const double de = dist(en, t.coords());
    const double dx = dist(x, t.coords());
    return std::pow(de, alpha) / std::pow(dx, n);
  });
}

std::pair<double, double> j_alpha_beta(double r, double alpha, double beta,
                                       int n,
                                       const quadrature::SphereRule& rule) {
  if (!(r >= 0.0 && r < 1.0))
    throw std::domain_error("j_alpha_beta: r must lie in [0,1)");
  Vec x(n, 0.0);
  x[n - 1] = r;
  Vec en(n, 0.0);
  en[n - 1] = 1.0;
  const double J = quadrature::integrate_sphere(rule, [&](const SpherePoint& t) {
    const double de = dist(en, t.coords());
    const double dx = dist(x, t.coords());
    return std::pow(de, beta) / std::pow(dx, n + alpha);
  });
  return {J, std::pow(1.0 - r, alpha) * J};
}

double d_integral(double r, double rho, double s, int n,
                  const quadrature::SphereRule& rule) {
  if (!(r > 0.0 && r < 1.0 && rho > 0.0 && rho < 1.0))
    throw std::domain_error("d_integral: r, rho must lie in (0,1)");
  Vec x(n, 0.0);
  x[n - 1] = r;
  const double area = quadrature::sphere_area(n);
  return area * quadrature::integrate_sphere(rule, [&](const SpherePoint& xi) {
    const Vec rx = scale(rho, xi.coords());
    return std::pow(moebius::bracket(x, rx), -s);
  });
}

double disc_i_alpha(double r, double alpha) {
  if (!(r >= 0.0 && r < 1.0))
    throw std::domain_error("disc_i_alpha: r must lie in [0,1)");
  if (r == 0.0) return 1.0;
  const int m = std::max(64, static_cast<int>(std::ceil(32.0 / (1.0 - r))));
  const double w2a = std::pow(1.0 - r * r, alpha);
  double acc = 0.0;
  for (int j = 0; j < m; ++j) {
    const double t = 2.0 * specfun::kPi * j / m;
    const double denom2 = 1.0 - 2.0 * r * std::cos(t) + r * r;
    acc += w2a / std::pow(denom2, (alpha + 1.0) / 2.0);
  }
  return acc / m;
}

ExponentFit gradient_probe(const Params& p,
                           const std::function<double(const SpherePoint&)>& f,
                           const SpherePoint& x0,
                           const std::vector<double>& radii,
                           const quadrature::SphereRule& rule,
                           Warnings* warnings) {
  if (!(p.alpha > 0.0))
    throw std::domain_error("gradient_probe: requires alpha > 0");
  std::vector<std::pair<double, double>> samples;
  for (double r : radii) {
    if (!(r > 0.0 && r < 1.0))
      throw std::domain_error("gradient_probe: radii must lie in (0,1)");
    const double h = std::min(1e-4, (1.0 - r) / 10.0);
    if (warnings && h < 1e-4)
      warnings->push_back("gradient_probe: fd step floor bound at r = " +
                          std::to_string(r));
    const Vec center = scale(r, x0.coords());
    double grad2 = 0.0;
    Vec probe = center;
    for (int i = 0; i < p.n; ++i) {
      probe[i] = center[i] + h;
      const double up = solver::poisson_integral(p, f, BallPoint(probe), rule);
      probe[i] = center[i] - h;
      const double um = solver::poisson_integral(p, f, BallPoint(probe), rule);
      probe[i] = center[i];
      const double gi = (up - um) / (2.0 * h);
      grad2 += gi * gi;
    }
    samples.emplace_back(1.0 - r, std::sqrt(grad2));
  }
  return fit_exponent(samples);
}

std::vector<double> geometric_radii(double r_min, double r_max, int count) {
  if (count < 2) throw std::invalid_argument("geometric_radii: count >= 2");
  const double g_hi = 1.0 - r_min, g_lo = 1.0 - r_max;
  std::vector<double> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / (count - 1);
    out.push_back(1.0 - g_hi * std::pow(g_lo / g_hi, t));
  }
  return out;
}

}  // namespace talpha::estimates
