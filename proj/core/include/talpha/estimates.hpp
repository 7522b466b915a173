#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "talpha/quadrature.hpp"
#include "talpha/types.hpp"

namespace talpha::estimates {

// Least-squares power-law fit: samples are (1-r, value) pairs, the
// exponent is the slope of log(value) against log(1-r).
struct ExponentFit {
  std::vector<std::pair<double, double>> samples;
  double fitted_exponent = 0;
  double r_squared = 0;
  double window_r_min = 0;
  double window_r_max = 0;
};

// Requires >= 4 samples with positive values and distinct abscissae;
// throws std::invalid_argument otherwise.
ExponentFit fit_exponent(const std::vector<std::pair<double, double>>& samples);

// I_alpha(r e_n) = int_{S^{n-1}} |e_n - t|^alpha / |x - t|^n dsigma(t),
// x = r e_n; grows no faster than (1-r)^{alpha-1}.
double i_alpha(double r, double alpha, int n,
               const quadrature::SphereRule& rule);

// J_alpha^beta(r e_n) = int |e_n - t|^beta / |x - t|^{n+alpha} dsigma(t)
// and I = (1-r)^alpha J; I grows no faster than (1-r)^{beta-1}.
std::pair<double, double> j_alpha_beta(double r, double alpha, double beta,
                                       int n,
                                       const quadrature::SphereRule& rule);

// D(r,rho) = int_{S^{n-1}} dS(xi) / [x, rho xi]^s with |x| = r
// (unnormalized surface measure). Three regimes as rho -> 1 with r = rho:
// (1-rho)^{-(s-n+1)} for s > n-1, log(1-rho) for s = n-1, bounded below.
double d_integral(double r, double rho, double s, int n,
                  const quadrature::SphereRule& rule);

// Disc integral (n = 2)
//   I_alpha(r) = (1/2pi) int_0^{2pi} (1-r^2)^alpha / |1 - r e^{it}|^{alpha+1} dt
// by the periodic trapezoid rule with the node count tied to 1/(1-r).
double disc_i_alpha(double r, double alpha);

// Fit of |grad h(r x0)| against (1-r) for h = P_alpha[f], gradients by
// central differences with step min(1e-4, (1-r)/10). A warning is appended
// when the step floor binds.
ExponentFit gradient_probe(const Params& p,
                           const std::function<double(const SpherePoint&)>& f,
                           const SpherePoint& x0,
                           const std::vector<double>& radii,
                           const quadrature::SphereRule& rule,
                           Warnings* warnings = nullptr);

// count radii with 1-r geometrically spaced between 1-r_min and 1-r_max.
std::vector<double> geometric_radii(double r_min, double r_max, int count);

}  // namespace talpha::estimates
