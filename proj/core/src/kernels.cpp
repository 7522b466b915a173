#include "talpha/kernels.hpp"

#include <cmath>
#include <string>

#include "talpha/moebius.hpp"
#include "talpha/quadrature.hpp"
#include "talpha/specfun.hpp"

namespace talpha::kernels {

namespace {

using specfun::HypParams;

double require_open_radius(double s, const char* who) {
  if (s <= 0.0)
    throw SingularPointError(std::string(who) + ": singular at the origin");
  if (s >= 1.0)
    throw std::domain_error(std::string(who) + ": requires |x| < 1");
  return s;
}

// Adaptive Gauss(7)/Kronrod(15) on [lo,hi], absolute tolerance driven.
struct GK15 {
  // Kronrod nodes (positive half) and weights; Gauss-7 weights interleave.
  static constexpr double xk[8] = {
      0.0,
      0.2077849550078985,
      0.4058451513773972,
      0.5860872354676911,
      0.7415311855993945,
      0.8648644233597691,
      0.9491079123427585,
      0.9914553711208126};
  static constexpr double wk[8] = {
      0.2094821410847278,
      0.2044329400752989,
      0.1903505780647854,
      0.1690047266392679,
      0.1406532597155259,
      0.1047900103222502,
      0.0630920926299786,
      0.0229353220105292};
  static constexpr double wg[4] = {
      0.4179591836734694,
      0.3818300505051189,
      0.2797053914892767,
      0.1294849661688697};
};

template <typename F>
void gk15(const F& f, double lo, double hi, double* kronrod, double* err) {
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  const double f0 = f(mid);
  double acc_k = GK15::wk[0] * f0;
  double acc_g = GK15::wg[0] * f0;
  for (int i = 1; i < 8; ++i) {
    const double dx = half * GK15::xk[i];
    const double fv = f(mid - dx) + f(mid + dx);
    acc_k += GK15::wk[i] * fv;
    if (i % 2 == 0) acc_g += GK15::wg[i / 2] * fv;
  }
  *kronrod = acc_k * half;
  *err = std::abs((acc_k - acc_g) * half);
}

template <typename F>
double adaptive_quad(const F& f, double lo, double hi, double abs_tol,
                     int depth = 0) {
  double v, err;
  gk15(f, lo, hi, &v, &err);
  // relative floor keeps the recursion from chasing noise on large panels
  if (err <= std::max(abs_tol, 1e-14 * std::abs(v)) || depth >= 40) return v;
  const double mid = 0.5 * (lo + hi);
  return adaptive_quad(f, lo, mid, abs_tol / 2.0, depth + 1) +
         adaptive_quad(f, mid, hi, abs_tol / 2.0, depth + 1);
}

}  // namespace

namespace {

// Gamma(alpha+1)Gamma(n/2) / (Gamma((alpha+n)/2)Gamma((alpha+2)/2))
double lambda_quotient(const Params& p) {
  return specfun::gamma(p.alpha + 1.0) * specfun::gamma(p.n / 2.0) /
         (specfun::gamma((p.alpha + p.n) / 2.0) *
          specfun::gamma((p.alpha + 2.0) / 2.0));
}

}  // namespace

double calibrate_c_alpha(const Params& p) {
  const HypParams radial(-p.alpha / 2.0, (p.n - 2.0 - p.alpha) / 2.0,
                         p.n / 2.0);
  return 1.0 / specfun::hyp2f1_at_one(radial);
}

KernelConstants constants(const Params& p) {
  KernelConstants k;
  const double lam = lambda_quotient(p);
  k.c_alpha_paper = -2.0 * lam;
  k.d_alpha_paper = -0.5 / lam;
  k.c_alpha_calibrated = calibrate_c_alpha(p);
  k.sphere_area = quadrature::sphere_area(p.n);
  k.green_normalizer = 1.0 / ((p.alpha + 1.0) * k.sphere_area);
  return k;
}

double poisson_kernel(const Params& p, const BallPoint& x,
                      const SpherePoint& zeta) {
  const double c = calibrate_c_alpha(p);
  const double one_minus_x2 = 1.0 - x.norm() * x.norm();
  const double d = dist(x.coords(), zeta.coords());
  return c * std::pow(one_minus_x2, 1.0 + p.alpha) /
         std::pow(d, p.n + p.alpha);
}

RadialGreen::RadialGreen(const Params& p)
    : d_alpha_(-0.5 / lambda_quotient(p)),
      alpha_(p.alpha),
      hp_((p.alpha + p.n) / 2.0, (p.alpha + 2.0) / 2.0, p.alpha + 2.0) {}

double RadialGreen::operator()(double s) const {
  require_open_radius(s, "green_radial");
  const double w = 1.0 - s * s;
  return d_alpha_ * std::pow(w, alpha_ + 1.0) * specfun::hyp2f1(hp_, w);
}

double green_radial(const Params& p, double s) {
  return RadialGreen(p)(s);
}

double green_radial(const Params& p, const BallPoint& x) {
  return green_radial(p, x.norm());
}

double green_radial_derivative(const Params& p, double s) {
  require_open_radius(s, "green_radial_derivative");
  const double d_alpha = -0.5 / lambda_quotient(p);
  const HypParams hp((p.alpha + p.n) / 2.0, (p.alpha + 2.0) / 2.0,
                     p.alpha + 1.0);
  const double w = 1.0 - s * s;
  return -2.0 * d_alpha * (p.alpha + 1.0) * s * s *
         std::pow(w, p.alpha) * specfun::hyp2f1(hp, w);
}

double green_two_point(const Params& p, const BallPoint& x,
                       const BallPoint& y) {
  if (dist(x.coords(), y.coords()) == 0.0)
    throw SingularPointError("green_two_point: singular at x = y");
  const double cf = moebius::conformal_factor(x, y);
  const Vec image = moebius::moebius_map(x.coords(), y.coords());
  return std::pow(cf, (p.n - 2.0 - p.alpha) / 2.0) *
         green_radial(p, norm(image));
}

double green_rep_kernel(const Params& p, const BallPoint& x,
                        const BallPoint& y) {
  if (dist(x.coords(), y.coords()) == 0.0)
    throw SingularPointError("green_rep_kernel: singular at x = y");
  const double br = moebius::bracket(x.coords(), y.coords());
  const Vec image = moebius::moebius_map(x.coords(), y.coords());
  return std::pow(br, -(p.n - 2.0 - p.alpha)) * green_radial(p, norm(image));
}

double hyperbolic_g(double r, double t, int n) {
  if (n < 3) throw std::invalid_argument("hyperbolic_g: requires n >= 3");
  if (!(0.0 <= r && r <= t && t <= 1.0))
    throw std::domain_error("hyperbolic_g: requires 0 <= r <= t <= 1");
  if (r == t) return 0.0;
  if (r == 0.0)
    throw SingularPointError(
        "hyperbolic_g: integrand ~ u^{1-n} is not integrable at 0");
  const auto f = [n](double u) {
    return std::pow(1.0 - u * u, n - 2) * std::pow(u, 1 - n);
  };
  return adaptive_quad(f, r, t, 1e-12);
}

double hyperbolic_g_to_one(double r, int n) { return hyperbolic_g(r, 1.0, n); }

double hyperbolic_green(const BallPoint& x, const BallPoint& y, int n) {
  const double d = dist(x.coords(), y.coords());
  if (d == 0.0)
    throw SingularPointError("hyperbolic_green: singular at x = y");
  const double br = moebius::bracket(x.coords(), y.coords());
  return hyperbolic_g_to_one(d / br, n);
}

double poisson_szego(const BallPoint& x, const SpherePoint& t, int n) {
  const double one_minus_x2 = 1.0 - x.norm() * x.norm();
  const double d2 = norm_sq(sub(t.coords(), x.coords()));
  return std::pow(one_minus_x2 / d2, n - 1);
}

double k_alpha(const Params& p, double s) {
  require_open_radius(s, "k_alpha");
  const HypParams hp((p.alpha + p.n) / 2.0, (p.alpha + 2.0) / 2.0,
                     p.alpha + 2.0);
  return std::pow(s, p.n - 2.0) * specfun::hyp2f1(hp, 1.0 - s * s);
}

double h_alpha_density(const Params& p, double s) {
  require_open_radius(s, "h_alpha_density");
  return green_radial(p, s) * std::pow(1.0 - s * s, -p.alpha - 1.0);
}

}  // namespace talpha::kernels
