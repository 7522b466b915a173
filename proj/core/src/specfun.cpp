#include "talpha/specfun.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace talpha::specfun {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

bool near_integer(double x, double tol, long long* m) {
  const double r = std::round(x);
  if (std::abs(x - r) <= tol) {
    *m = static_cast<long long>(r);
    return true;
  }
  return false;
}

bool is_nonpositive_integer(double x, double tol = 1e-12) {
  long long m;
  return near_integer(x, tol, &m) && m <= 0;
}

// Lanczos coefficients, g = 7, 9 terms (Godfrey's set).
constexpr double kLanczosG = 7.0;
constexpr double kLanczosC[9] = {
    0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
    771.32342877765313,       -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};

double gamma_right_half(double x) {
  // valid for x >= 0.5
  double acc = kLanczosC[0];
  for (int i = 1; i < 9; ++i) acc += kLanczosC[i] / (x - 1.0 + i);
  const double t = x + kLanczosG - 0.5;
  return std::sqrt(2.0 * kPi) * std::pow(t, x - 0.5) * std::exp(-t) * acc;
}

}  // namespace

double sinpi(double x) {
  const double k = std::round(x);
  const double f = x - k;  // exact for |x| within integer range
  const double s = std::sin(kPi * f);
  return (static_cast<long long>(k) % 2 == 0) ? s : -s;
}

double gamma(double x) {
  if (x <= 0.5 && is_nonpositive_integer(x))
    throw PoleError("gamma: pole at non-positive integer x = " +
                    std::to_string(x));
  if (x >= 0.5) return gamma_right_half(x);
  // reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
  return kPi / (sinpi(x) * gamma_right_half(1.0 - x));
}

double reciprocal_gamma(double x) {
  if (x <= 0.5 && is_nonpositive_integer(x)) return 0.0;
  return 1.0 / gamma(x);
}

double digamma(double x) {
  if (x <= 0.5 && is_nonpositive_integer(x))
    throw PoleError("digamma: pole at non-positive integer x = " +
                    std::to_string(x));
  if (x < 0.5) {
    // psi(1-x) - psi(x) = pi cot(pi x)
    const double k = std::round(x);
    const double f = x - k;
    const double cospix =
        ((static_cast<long long>(k) % 2) == 0 ? 1.0 : -1.0) * std::cos(kPi * f);
    return digamma(1.0 - x) - kPi * cospix / sinpi(x);
  }
  double acc = 0.0;
  double y = x;
  while (y < 10.0) {
    acc -= 1.0 / y;
    y += 1.0;
  }
  // asymptotic expansion, Bernoulli terms through y^{-12}
  const double inv = 1.0 / y;
  const double inv2 = inv * inv;
  double series = std::log(y) - 0.5 * inv;
  series -= inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 * (1.0 / 252.0 -
                    inv2 * (1.0 / 240.0 - inv2 * (1.0 / 132.0 -
                    inv2 * 691.0 / 32760.0)))));
  return acc + series;
}

HypParams::HypParams(double a_, double b_, double c_) : a(a_), b(b_), c(c_) {
  if (is_nonpositive_integer(c))
    throw DegenerateParameterError(
        "HypParams: c must not be a non-positive integer, got c = " +
        std::to_string(c));
}

namespace {

// Plain power series sum of 2F1(a,b;c;z); caller guarantees convergence
// regime. Stops when two consecutive terms are below machine precision
// relative to the sum.
double gauss_series(double a, double b, double c, double z, int max_terms,
                    double target_rel) {
  double term = 1.0;
  double sum = 1.0;
  int small_streak = 0;
  for (int k = 0; k < max_terms; ++k) {
    term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
    sum += term;
    if (term == 0.0) return sum;  // terminated exactly
    if (std::abs(term) <= kEps * std::abs(sum)) {
      if (++small_streak >= 2) return sum;
    } else {
      small_streak = 0;
    }
  }
  if (std::abs(term) <= target_rel * std::abs(sum)) return sum;
  throw ConvergenceError(
      "hyp2f1: series did not reach target accuracy within " +
      std::to_string(max_terms) + " terms (z = " + std::to_string(z) + ")");
}

// Terminating sum when a = -m is a non-positive integer.
double terminating_series(double a, double b, double c, double z,
                          long long m) {
  double term = 1.0;
  double sum = 1.0;
  for (long long k = 0; k < -m; ++k) {
    term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
    sum += term;
  }
  return sum;
}

// Connection formula about z = 1 for non-integer d = c-a-b:
//   F(a,b;c;z) = G1 * F(a,b;1-d;1-z) + G2 * (1-z)^d * F(c-a,c-b;1+d;1-z).
double connection_noninteger(double a, double b, double c, double z,
                             const Hyp2f1Options& opt) {
  const double d = c - a - b;
  const double w = 1.0 - z;
  const double g1 =
      gamma(c) * gamma(d) * reciprocal_gamma(c - a) * reciprocal_gamma(c - b);
  const double g2 =
      gamma(c) * gamma(-d) * reciprocal_gamma(a) * reciprocal_gamma(b);
  double f1 = 0.0, f2 = 0.0;
  if (g1 != 0.0) f1 = gauss_series(a, b, 1.0 - d, w, opt.max_terms, opt.target_rel);
  if (g2 != 0.0)
    f2 = gauss_series(c - a, c - b, 1.0 + d, w, opt.max_terms, opt.target_rel);
  return g1 * f1 + g2 * std::pow(w, d) * f2;
}

// Logarithmic connection for c = a+b (A&S 15.3.10).
double connection_log_m0(double a, double b, double z,
                         const Hyp2f1Options& opt) {
  const double w = 1.0 - z;
  const double lw = std::log(w);
  double coef = 1.0;
  double psi_k1 = digamma(1.0);
  double psi_ak = digamma(a);
  double psi_bk = digamma(b);
  double sum = 0.0;
  int small_streak = 0;
  for (int k = 0; k < opt.max_terms; ++k) {
    const double bracket = 2.0 * psi_k1 - psi_ak - psi_bk - lw;
    const double term = coef * bracket;
    sum += term;
    if (std::abs(term) <= kEps * std::abs(sum)) {
      if (++small_streak >= 2) break;
    } else {
      small_streak = 0;
    }
    coef *= (a + k) * (b + k) / ((k + 1.0) * (k + 1.0)) * w;
    psi_k1 += 1.0 / (k + 1.0);
    psi_ak += 1.0 / (a + k);
    psi_bk += 1.0 / (b + k);
  }
  return gamma(a + b) * reciprocal_gamma(a) * reciprocal_gamma(b) * sum;
}

// Logarithmic connection for c = a+b+m, m >= 1 (A&S 15.3.11).
double connection_log_pos(double a, double b, double z, long long m,
                          const Hyp2f1Options& opt) {
  const double w = 1.0 - z;
  const double lw = std::log(w);
  const double c = a + b + static_cast<double>(m);
  // finite part
  double finite = 0.0;
  {
    double coef = 1.0;  // (a)_k (b)_k / (k! (1-m)_k)
    for (long long k = 0; k < m; ++k) {
      finite += coef;
      coef *= (a + k) * (b + k) / ((k + 1.0) * (1.0 - m + k)) * w;
    }
  }
  const double f1 = gamma(static_cast<double>(m)) * gamma(c) *
                    reciprocal_gamma(a + m) * reciprocal_gamma(b + m) * finite;
  // logarithmic series
  const double pre = gamma(c) * reciprocal_gamma(a) * reciprocal_gamma(b);
  double sum = 0.0;
  if (pre != 0.0) {
    double coef = 1.0 / gamma(static_cast<double>(m) + 1.0);  // 1/(m)! at k=0
    double psi_k1 = digamma(1.0);
    double psi_km1 = digamma(static_cast<double>(m) + 1.0);
    double psi_am = digamma(a + m);
    double psi_bm = digamma(b + m);
    int small_streak = 0;
    for (int k = 0; k < opt.max_terms; ++k) {
      const double bracket = lw - psi_k1 - psi_km1 + psi_am + psi_bm;
      const double term = coef * bracket;
      sum += term;
      if (std::abs(term) <= kEps * (std::abs(sum) + 1e-300)) {
        if (++small_streak >= 2) break;
      } else {
        small_streak = 0;
      }
      coef *= (a + m + k) * (b + m + k) / ((k + 1.0) * (k + 1.0 + m)) * w;
      psi_k1 += 1.0 / (k + 1.0);
      psi_km1 += 1.0 / (k + 1.0 + m);
      psi_am += 1.0 / (a + m + k);
      psi_bm += 1.0 / (b + m + k);
    }
  }
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  return f1 - sign * pre * std::pow(w, static_cast<double>(m)) * sum;
}

// Logarithmic connection for c = a+b-m, m >= 1 (A&S 15.3.12).
double connection_log_neg(double a, double b, double z, long long m,
                          const Hyp2f1Options& opt) {
  const double w = 1.0 - z;
  const double lw = std::log(w);
  const double c = a + b - static_cast<double>(m);
  double finite = 0.0;
  {
    double coef = 1.0;  // (a-m)_k (b-m)_k / (k! (1-m)_k)
    for (long long k = 0; k < m; ++k) {
      finite += coef;
      coef *= (a - m + k) * (b - m + k) / ((k + 1.0) * (1.0 - m + k)) * w;
    }
  }
  const double f1 = gamma(static_cast<double>(m)) * gamma(c) *
                    reciprocal_gamma(a) * reciprocal_gamma(b) *
                    std::pow(w, -static_cast<double>(m)) * finite;
  const double pre = gamma(c) * reciprocal_gamma(a - m) * reciprocal_gamma(b - m);
  double sum = 0.0;
  if (pre != 0.0) {
    double coef = 1.0 / gamma(static_cast<double>(m) + 1.0);
    double psi_k1 = digamma(1.0);
    double psi_km1 = digamma(static_cast<double>(m) + 1.0);
    double psi_ak = digamma(a);
    double psi_bk = digamma(b);
    int small_streak = 0;
    for (int k = 0; k < opt.max_terms; ++k) {
      const double bracket = lw - psi_k1 - psi_km1 + psi_ak + psi_bk;
      const double term = coef * bracket;
      sum += term;
      if (std::abs(term) <= kEps * (std::abs(sum) + 1e-300)) {
        if (++small_streak >= 2) break;
      } else {
        small_streak = 0;
      }
      coef *= (a + k) * (b + k) / ((k + 1.0) * (k + 1.0 + m)) * w;
      psi_k1 += 1.0 / (k + 1.0);
      psi_km1 += 1.0 / (k + 1.0 + m);
      psi_ak += 1.0 / (a + k);
      psi_bk += 1.0 / (b + k);
    }
  }
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  return f1 - sign * pre * sum;
}

// Estimated series length to reach ~1e-16 relative at ratio |z|.
int series_length_estimate(double z) {
  const double az = std::abs(z);
  if (az < 0.1) return 64;
  return static_cast<int>(std::ceil(37.0 / -std::log(az))) + 64;
}

}  // namespace

double hyp2f1(const HypParams& p, double z) {
  return hyp2f1(p, z, Hyp2f1Options{});
}

double hyp2f1(const HypParams& p, double z, const Hyp2f1Options& opt) {
  const double a = p.a, b = p.b, c = p.c;
  if (!(z > -1.0 && z < 1.0))
    throw std::domain_error("hyp2f1: argument must satisfy |z| < 1, got z = " +
                            std::to_string(z));
  if (z == 0.0) return 1.0;

  long long m;
  if (near_integer(a, 1e-12, &m) && m <= 0)
    return terminating_series(a, b, c, z, m);
  if (near_integer(b, 1e-12, &m) && m <= 0)
    return terminating_series(b, a, c, z, m);

  // binomial cases 2F1(a,b;b;z) = (1-z)^{-a}
  if (std::abs(c - b) < 1e-14) return std::pow(1.0 - z, -a);
  if (std::abs(c - a) < 1e-14) return std::pow(1.0 - z, -b);

  if (z <= 0.5) return gauss_series(a, b, c, z, opt.max_terms, opt.target_rel);

  const double d = c - a - b;
  const double dr = std::round(d);
  const double dist = std::abs(d - dr);

  if (dist >= 0.05) return connection_noninteger(a, b, c, z, opt);

  // Near-integer d: the two-term connection cancels badly, so prefer the
  // direct series while it can converge, else the logarithmic expansion.
  if (series_length_estimate(z) <= opt.max_terms && z < 0.75)
    return gauss_series(a, b, c, z, opt.max_terms, opt.target_rel);

  if (dist <= 1e-9) {
    const long long mi = static_cast<long long>(dr);
    if (mi == 0) return connection_log_m0(a, b, z, opt);
    if (mi > 0) return connection_log_pos(a, b, z, mi, opt);  // c = a+b+m
    return connection_log_neg(a, b, z, -mi, opt);             // c = a+b-m
  }

  if (series_length_estimate(z) <= opt.max_terms)
    return gauss_series(a, b, c, z, opt.max_terms, opt.target_rel);

  throw ConvergenceError(
      "hyp2f1: c-a-b is too close to an integer for the connection formula "
      "and the direct series cannot converge at z = " +
      std::to_string(z));
}

double hyp2f1_at_one(const HypParams& p) {
  const double d = p.c - p.a - p.b;
  if (!(d > 0.0))
    throw std::domain_error(
        "hyp2f1_at_one: requires c-a-b > 0, got c-a-b = " + std::to_string(d));
  return gamma(p.c) * gamma(d) * reciprocal_gamma(p.c - p.a) *
         reciprocal_gamma(p.c - p.b);
}

double limit_ratio_at_one(const HypParams& p) {
  const double d = p.c - p.a - p.b;
  if (!(d < 0.0))
    throw std::domain_error(
        "limit_ratio_at_one: requires c-a-b < 0, got c-a-b = " +
        std::to_string(d));
  return gamma(p.c) * gamma(-d) * reciprocal_gamma(p.a) *
         reciprocal_gamma(p.b);
}

double ode_residual(const HypParams& p, const std::function<double(double)>& w,
                    double z, double fd_step) {
  double h = fd_step;
  // keep the stencil inside (0,1)
  const double margin = std::min(z, 1.0 - z);
  if (2.0 * h >= margin) h = margin / 4.0;
  const double wm = w(z - h);
  const double w0 = w(z);
  const double wp = w(z + h);
  const double d1 = (wp - wm) / (2.0 * h);
  const double d2 = (wp - 2.0 * w0 + wm) / (h * h);
  return ode_residual(p, w0, d1, d2, z);
}

double ode_residual(const HypParams& p, double w, double dw, double d2w,
                    double z) {
  return z * (1.0 - z) * d2w + (p.c - (p.a + p.b + 1.0) * z) * dw -
         p.a * p.b * w;
}

std::pair<double, double> solutions_at_one(const HypParams& p, double z) {
  if (!(z > 0.0 && z < 1.0))
    throw std::domain_error("solutions_at_one: z must lie in (0,1)");
  const double d = p.c - p.a - p.b;
  if (std::abs(d) <= 1e-12) {
    const double v = hyp2f1(HypParams(p.a, p.b, 1.0), 1.0 - z);
    return {v, v};
  }
  long long m;
  if (near_integer(d, 1e-9, &m)) {
    // Nonzero integer d: one branch's c-parameter is a non-positive
    // integer, so the stated pair degenerates. The surviving branch is
    // returned; the flagged branch is NaN.
    const double nan = std::numeric_limits<double>::quiet_NaN();
    if (m > 0)
      return {nan, std::pow(1.0 - z, d) *
                       hyp2f1(HypParams(p.c - p.a, p.c - p.b, 1.0 + d), 1.0 - z)};
    return {hyp2f1(HypParams(p.a, p.b, 1.0 - d), 1.0 - z), nan};
  }
  const double x1 = hyp2f1(HypParams(p.a, p.b, 1.0 - d), 1.0 - z);
  const double x2 = std::pow(1.0 - z, d) *
                    hyp2f1(HypParams(p.c - p.a, p.c - p.b, 1.0 + d), 1.0 - z);
  return {x1, x2};
}

}  // namespace talpha::specfun
