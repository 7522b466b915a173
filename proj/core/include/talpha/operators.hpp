#pragma once

#include <functional>

#include "talpha/types.hpp"

namespace talpha::operators {

// Real-valued function on the ball, optionally carrying analytic gradient
// and Laplacian. Missing derivatives fall back to central finite
// differences with step fd_step (Richardson-refined once near the
// boundary shell |x| >= 0.9, where the kernels are steep).
struct ScalarField {
  std::function<double(const Vec&)> value;
  std::function<Vec(const Vec&)> gradient;      // may be empty
  std::function<double(const Vec&)> laplacian;  // may be empty
  double fd_step = 1e-4;
};

Vec gradient_at(const ScalarField& u, const Vec& x, Warnings* warnings = nullptr);
double laplacian_at(const ScalarField& u, const Vec& x,
                    Warnings* warnings = nullptr);

// R u(x) = <x, grad u(x)>.
double radial_derivative(const ScalarField& u, const Vec& x,
                         Warnings* warnings = nullptr);

// T_alpha u = (1-|x|^2) Lap u + 2 alpha <x, grad u> + (n-2-alpha) alpha u.
double t_alpha_apply(const Params& p, const ScalarField& u, const Vec& x,
                     Warnings* warnings = nullptr);

// Delta_gamma u = (1-|x|^2) { (1-|x|^2)/4 Lap u + gamma <x, grad u>
//                             + gamma (n/2 - 1 - gamma) u }.
// Satisfies T_alpha = 4/(1-|x|^2) Delta_{alpha/2}.
double delta_gamma_apply(double gamma, const ScalarField& u, const Vec& x,
                         Warnings* warnings = nullptr);

// Hyperbolic Laplacian
//   Delta_h u = (1-|x|^2)^2 Lap u + 2(n-2)(1-|x|^2) <x, grad u>
//             = (1-|x|^2) T_{n-2} u.
double delta_h_apply(const ScalarField& u, const Vec& x,
                     Warnings* warnings = nullptr);

// Residual of the invariance identity
//   T_alpha{ [x,y]^{-(n-2-alpha)} u(phi_x(y)) }
//     = (1-|x|^2) [x,y]^{-(n-alpha)} (T_alpha u)(phi_x(y)),
// left minus right, with the left side differentiated in y by finite
// differences.
double invariance_residual(const Params& p, const ScalarField& u,
                           const BallPoint& x, const BallPoint& y);

}  // namespace talpha::operators
