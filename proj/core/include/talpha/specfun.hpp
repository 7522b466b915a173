#pragma once

#include <functional>
#include <utility>

#include "talpha/types.hpp"

namespace talpha::specfun {

inline constexpr double kPi = 3.14159265358979323846;

// Gamma function on the real line. Throws PoleError at 0, -1, -2, ...
// Lanczos approximation (g = 7, 9 terms) with reflection for x < 1/2;
// relative accuracy ~1e-13 on [-20, 50].
double gamma(double x);

// 1/Gamma(x); returns 0 at the poles instead of throwing.
double reciprocal_gamma(double x);

// Digamma (psi) function; throws PoleError at the non-positive integers.
double digamma(double x);

// sin(pi*x) with argument reduction done in exact arithmetic.
double sinpi(double x);

// Parameter triple of the hypergeometric equation
//   z(1-z) w'' + [c - (a+b+1) z] w' - a b w = 0.
// c must not be a non-positive integer; parameters are stored as given.
struct HypParams {
  double a;
  double b;
  double c;

  HypParams(double a_, double b_, double c_);
};

struct Hyp2f1Options {
  int max_terms = 10000;      // series iteration budget
  double target_rel = 1e-10;  // declared accuracy of the evaluation
};

// Gauss hypergeometric function 2F1(a,b;c;z) for real z in (-1,1).
// Direct series for z <= 1/2; z -> 1-z connection formulas for z > 1/2,
// including the logarithmic (digamma) expansions when c-a-b is an integer.
// Throws ConvergenceError when the budget cannot reach the target accuracy.
double hyp2f1(const HypParams& p, double z);
double hyp2f1(const HypParams& p, double z, const Hyp2f1Options& opt);

// Gauss summation: 2F1(a,b;c;1) = Gamma(c)Gamma(c-a-b)/(Gamma(c-a)Gamma(c-b)),
// valid for c-a-b > 0. Throws std::domain_error otherwise.
double hyp2f1_at_one(const HypParams& p);

// lim_{z->1-} 2F1(a,b;c;z) / (1-z)^{c-a-b} = Gamma(c)Gamma(a+b-c)/(Gamma(a)Gamma(b)),
// valid for c-a-b < 0. Throws std::domain_error otherwise.
double limit_ratio_at_one(const HypParams& p);

// Value of the hypergeometric differential operator applied to w at z,
//   z(1-z) w'' + [c-(a+b+1)z] w' - a b w,
// with derivatives by central differences of the supplied function.
double ode_residual(const HypParams& p, const std::function<double(double)>& w,
                    double z, double fd_step = 1e-5);

// Same, with caller-supplied derivatives.
double ode_residual(const HypParams& p, double w, double dw, double d2w,
                    double z);

// Pair of independent solutions about z = 1 for z in (0,1):
//   X1 = 2F1(a,b;1+a+b-c;1-z),
//   X2 = (1-z)^{c-a-b} 2F1(c-a,c-b;1+c-a-b;1-z).
// When c = a+b the two coincide: X1 = X2 = 2F1(a,b;1;1-z). For any other
// integer c-a-b the degenerate branch is flagged with NaN and only the
// surviving solution is computed (the logarithmic second solution is out
// of scope).
std::pair<double, double> solutions_at_one(const HypParams& p, double z);

}  // namespace talpha::specfun
