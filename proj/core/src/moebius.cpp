#include "talpha/moebius.hpp"

#include <cmath>

namespace talpha::moebius {

double bracket_sq(std::span<const double> x, std::span<const double> a) {
  return 1.0 + norm_sq(x) * norm_sq(a) - 2.0 * dot(x, a);
}

double bracket(std::span<const double> x, std::span<const double> a) {
  const double b2 = bracket_sq(x, a);
  if (!(b2 > 0.0))
    throw SingularPointError("bracket: [x,a] vanishes (both points on the "
                             "sphere at the same spot)");
  return std::sqrt(b2);
}

Vec moebius_map(std::span<const double> a, std::span<const double> x) {
  const double b2 = bracket_sq(x, a);
  if (!(b2 > 0.0))
    throw SingularPointError("moebius_map: [x,a] vanishes");
  const Vec xa = sub(x, a);
  const double xa2 = norm_sq(xa);
  const double one_minus_a2 = 1.0 - norm_sq(a);
  Vec r(a.size());
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] = (xa2 * a[i] - one_minus_a2 * xa[i]) / b2;
  return r;
}

Vec moebius_map(const BallPoint& a, const BallPoint& x) {
  return moebius_map(a.coords(), x.coords());
}

double conformal_factor(std::span<const double> x, std::span<const double> y) {
  return (1.0 - norm_sq(x)) / bracket_sq(x, y);
}

double conformal_factor(const BallPoint& x, const BallPoint& y) {
  return conformal_factor(x.coords(), y.coords());
}

}  // namespace talpha::moebius
