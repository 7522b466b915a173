#pragma once

#include <string>
#include <vector>

#include "talpha/operators.hpp"
#include "talpha/quadrature.hpp"

namespace talpha::fields {

// Library test fields with analytic gradients and Laplacians, so operator
// tests are separated from finite-difference error.
operators::ScalarField constant(double c, int n);
operators::ScalarField coordinate(int i, int n);  // x_{i+1}
operators::ScalarField radius_squared(int n);
operators::ScalarField one_minus_r2(int n);
operators::ScalarField one_minus_r2_squared(int n);
operators::ScalarField harmonic_quadratic(int n);  // x1^2 - x2^2
operators::ScalarField product_x1x2(int n);
operators::ScalarField cubic_x1(int n);            // x1^3
operators::ScalarField radius_fourth(int n);       // |x|^4

// Slice of the Poisson kernel at a fixed boundary pole; T_alpha-harmonic
// in the interior (interior probes only -- the trace is singular at the
// pole).
operators::ScalarField poisson_kernel_slice(const Params& p,
                                            const SpherePoint& pole);

// The radial Green function as a field on 0 < |x| < 1.
operators::ScalarField green_radial_field(const Params& p);

// Regular radial solution of T_alpha u = 0 with u(0) = 1,
// u(x) = 2F1(-alpha/2,(n-2-alpha)/2;n/2;|x|^2), continued to the sphere by
// its Gauss-summation boundary value.
operators::ScalarField radial_regular_solution(const Params& p);

// A manufactured Dirichlet case: closed-form u, hand-derived T_alpha u,
// and boundary trace.
struct Manufactured {
  std::string name;
  operators::ScalarField u;
  std::function<double(const Vec&)> t_alpha_u;
  std::function<double(const SpherePoint&)> boundary;
};

// {one-minus-r2, x1, x1sq-x2sq, one-minus-r2-sq} with hand-derived images.
std::vector<Manufactured> manufactured_corpus(const Params& p);
Manufactured manufactured_case(const Params& p, const std::string& name);

// T_alpha-harmonic case built as the Poisson integral of smooth boundary
// data f(zeta) = 1 + zeta_1 (so psi = 0 exactly); interior values and
// derivatives by quadrature against the supplied rule, boundary values by
// continuity. A boundary-pole kernel slice is not continuous up to the
// sphere, so this is the harmonic member of the corpus.
Manufactured poisson_extension_case(const Params& p,
                                    const quadrature::SphereRule& rule);

}  // namespace talpha::fields
