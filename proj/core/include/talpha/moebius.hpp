#pragma once

#include "talpha/types.hpp"

namespace talpha::moebius {

// [x,a]^2 = 1 + |x|^2 |a|^2 - 2 <x,a>, the symmetric bracket controlling
// all Moebius identities. Inputs may lie in the closed ball.
double bracket_sq(std::span<const double> x, std::span<const double> a);
double bracket(std::span<const double> x, std::span<const double> a);

// The canonical involutive automorphism of the unit ball swapping 0 and a:
//   phi_a(x) = (|x-a|^2 a - (1-|a|^2)(x-a)) / [x,a]^2.
// Maps the open ball to itself and the sphere to itself; phi_a(0) = a.
Vec moebius_map(std::span<const double> a, std::span<const double> x);
Vec moebius_map(const BallPoint& a, const BallPoint& x);

// Conformal factor |phi_x'(y)| = (1-|x|^2)/[x,y]^2.
double conformal_factor(std::span<const double> x, std::span<const double> y);
double conformal_factor(const BallPoint& x, const BallPoint& y);

}  // namespace talpha::moebius
