#include "talpha/fields.hpp"

#include <cmath>
#include <memory>

#include "talpha/kernels.hpp"
#include "talpha/specfun.hpp"

namespace talpha::fields {

using operators::ScalarField;

ScalarField constant(double c, int n) {
  ScalarField f;
  f.value = [c](const Vec&) { return c; };
  f.gradient = [n](const Vec&) { return Vec(n, 0.0); };
  f.laplacian = [](const Vec&) { return 0.0; };
  return f;
}

ScalarField coordinate(int i, int n) {
  ScalarField f;
  f.value = [i](const Vec& x) { return x[i]; };
  f.gradient = [i, n](const Vec&) {
    Vec g(n, 0.0);
    g[i] = 1.0;
    return g;
  };
  f.laplacian = [](const Vec&) { return 0.0; };
  return f;
}

ScalarField radius_squared(int n) {
  ScalarField f;
  f.value = [](const Vec& x) { return norm_sq(x); };
  f.gradient = [](const Vec& x) { return scale(2.0, x); };
  f.laplacian = [n](const Vec&) { return 2.0 * n; };
  return f;
}

ScalarField one_minus_r2(int n) {
  ScalarField f;
  f.value = [](const Vec& x) { return 1.0 - norm_sq(x); };
  f.gradient = [](const Vec& x) { return scale(-2.0, x); };
  f.laplacian = [n](const Vec&) { return -2.0 * n; };
  return f;
}

ScalarField one_minus_r2_squared(int n) {
  ScalarField f;
  f.value = [](const Vec& x) {
    const double w = 1.0 - norm_sq(x);
    return w * w;
  };
  f.gradient = [](const Vec& x) {
    return scale(-4.0 * (1.0 - norm_sq(x)), x);
  };
  f.laplacian = [n](const Vec& x) {
    const double r2 = norm_sq(x);
    return 8.0 * r2 - 4.0 * n * (1.0 - r2);
  };
  return f;
}

ScalarField harmonic_quadratic(int n) {
  ScalarField f;
  f.value = [](const Vec& x) { return x[0] * x[0] - x[1] * x[1]; };
  f.gradient = [n](const Vec& x) {
    Vec g(n, 0.0);
    g[0] = 2.0 * x[0];
    g[1] = -2.0 * x[1];
    return g;
  };
  f.laplacian = [](const Vec&) { return 0.0; };
  return f;
}

ScalarField product_x1x2(int n) {
  ScalarField f;
  f.value = [](const Vec& x) { return x[0] * x[1]; };
  f.gradient = [n](const Vec& x) {
    Vec g(n, 0.0);
    g[0] = x[1];
    g[1] = x[0];
    return g;
  };
  f.laplacian = [](const Vec&) { return 0.0; };
  return f;
}

ScalarField cubic_x1(int n) {
  ScalarField f;
  f.value = [](const Vec& x) { return x[0] * x[0] * x[0]; };
  f.gradient = [n](const Vec& x) {
    Vec g(n, 0.0);
    g[0] = 3.0 * x[0] * x[0];
    return g;
  };
  f.laplacian = [](const Vec& x) { return 6.0 * x[0]; };
  return f;
}

ScalarField radius_fourth(int n) {
  ScalarField f;
  f.value = [](const Vec& x) {
    const double r2 = norm_sq(x);
    return r2 * r2;
  };
  f.gradient = [](const Vec& x) { return scale(4.0 * norm_sq(x), x); };
  f.laplacian = [n](const Vec& x) { return (4.0 * n + 8.0) * norm_sq(x); };
  return f;
}

namespace {

// Gradient and Laplacian of K(x) = (1-|x|^2)^{1+a} |x - q|^{-(n+a)} for a
// fixed pole q, from the product rule with
//   A = (1-r^2)^{1+a}:  grad A = -2(1+a)(1-r^2)^a x,
//     Lap A = -2(1+a)(1-r^2)^{a-1} (n(1-r^2) - 2a r^2),
//   B = s^{-(n+a)}, s = |x-q|:  grad B = -(n+a) s^{-(n+a+2)} (x-q),
//     Lap B = (n+a)(a+2) s^{-(n+a+2)}.
struct KernelSlice {
  Params p;
  Vec pole;
  double c;

  double value(const Vec& x) const {
    const double w = 1.0 - norm_sq(x);
    const double s = dist(x, pole);
    return c * std::pow(w, 1.0 + p.alpha) / std::pow(s, p.n + p.alpha);
  }

  void parts(const Vec& x, double* A, Vec* gA, double* lA, double* B, Vec* gB,
             double* lB) const {
    const double a = p.alpha;
    const double r2 = norm_sq(x);
    const double w = 1.0 - r2;
    *A = std::pow(w, 1.0 + a);
    *gA = scale(-2.0 * (1.0 + a) * std::pow(w, a), x);
    *lA = -2.0 * (1.0 + a) * std::pow(w, a - 1.0) * (p.n * w - 2.0 * a * r2);
    const Vec xq = sub(x, pole);
    const double s = norm(xq);
    *B = std::pow(s, -(p.n + a));
    *gB = scale(-(p.n + a) * std::pow(s, -(p.n + a + 2.0)), xq);
    *lB = (p.n + a) * (a + 2.0) * std::pow(s, -(p.n + a + 2.0));
  }

  Vec gradient(const Vec& x) const {
    double A, lA, B, lB;
    Vec gA, gB;
    parts(x, &A, &gA, &lA, &B, &gB, &lB);
    Vec g(x.size());
    for (std::size_t i = 0; i < g.size(); ++i)
      g[i] = c * (A * gB[i] + B * gA[i]);
    return g;
  }

  double laplacian(const Vec& x) const {
    double A, lA, B, lB;
    Vec gA, gB;
    parts(x, &A, &gA, &lA, &B, &gB, &lB);
    return c * (A * lB + 2.0 * dot(gA, gB) + B * lA);
  }
};

}  // namespace

ScalarField poisson_kernel_slice(const Params& p, const SpherePoint& pole) {
  auto slice = std::make_shared<KernelSlice>(
      KernelSlice{p, pole.coords(), kernels::calibrate_c_alpha(p)});
  ScalarField f;
  f.value = [slice](const Vec& x) { return slice->value(x); };
  f.gradient = [slice](const Vec& x) { return slice->gradient(x); };
  f.laplacian = [slice](const Vec& x) { return slice->laplacian(x); };
  return f;
}

ScalarField green_radial_field(const Params& p) {
  ScalarField f;
  f.value = [p](const Vec& x) { return kernels::green_radial(p, norm(x)); };
  f.gradient = [p](const Vec& x) {
    const double r2 = norm_sq(x);
    // grad G = (R G / r^2) x
    return scale(kernels::green_radial_derivative(p, std::sqrt(r2)) / r2, x);
  };
  f.laplacian = [p](const Vec& x) {
    // from T_alpha G = 0: Lap G = -(2 alpha R G + (n-2-alpha) alpha G)/(1-r^2)
    const double r = norm(x);
    const double rg = kernels::green_radial_derivative(p, r);
    const double g = kernels::green_radial(p, r);
    return -(2.0 * p.alpha * rg + (p.n - 2.0 - p.alpha) * p.alpha * g) /
           (1.0 - r * r);
  };
  return f;
}

ScalarField radial_regular_solution(const Params& p) {
  const specfun::HypParams hp(-p.alpha / 2.0, (p.n - 2.0 - p.alpha) / 2.0,
                              p.n / 2.0);
  const double boundary_value = specfun::hyp2f1_at_one(hp);
  const double dfdw = hp.a * hp.b / hp.c;
  const specfun::HypParams hp1(hp.a + 1.0, hp.b + 1.0, hp.c + 1.0);
  const double d2 = dfdw * (hp.a + 1.0) * (hp.b + 1.0) / (hp.c + 1.0);
  const specfun::HypParams hp2(hp.a + 2.0, hp.b + 2.0, hp.c + 2.0);

  ScalarField f;
  f.value = [hp, boundary_value](const Vec& x) {
    const double r2 = norm_sq(x);
    if (r2 >= 1.0 - 1e-12) return boundary_value;
    return specfun::hyp2f1(hp, r2);
  };
  f.gradient = [hp1, dfdw](const Vec& x) {
    return scale(2.0 * dfdw * specfun::hyp2f1(hp1, norm_sq(x)), x);
  };
  f.laplacian = [p, hp1, hp2, dfdw, d2](const Vec& x) {
    const double r2 = norm_sq(x);
    // Lap g(r^2) = 2n g'(r^2) + 4 r^2 g''(r^2)
    return 2.0 * p.n * dfdw * specfun::hyp2f1(hp1, r2) +
           4.0 * r2 * d2 * specfun::hyp2f1(hp2, r2);
  };
  return f;
}

std::vector<Manufactured> manufactured_corpus(const Params& p) {
  const int n = p.n;
  const double a = p.alpha;
  std::vector<Manufactured> out;

  {
    Manufactured m;
    m.name = "one-minus-r2";
    m.u = one_minus_r2(n);
    m.t_alpha_u = [n, a](const Vec& x) {
      const double r2 = norm_sq(x);
      const double w = 1.0 - r2;
      return -2.0 * n * w - 4.0 * a * r2 + (n - 2.0 - a) * a * w;
    };
    m.boundary = [](const SpherePoint&) { return 0.0; };
    out.push_back(std::move(m));
  }
  {
    Manufactured m;
    m.name = "x1";
    m.u = coordinate(0, n);
    m.t_alpha_u = [n, a](const Vec& x) { return a * (n - a) * x[0]; };
    m.boundary = [](const SpherePoint& z) { return z.coords()[0]; };
    out.push_back(std::move(m));
  }
  {
    Manufactured m;
    m.name = "x1sq-x2sq";
    m.u = harmonic_quadratic(n);
    m.t_alpha_u = [n, a](const Vec& x) {
      return a * (n + 2.0 - a) * (x[0] * x[0] - x[1] * x[1]);
    };
    m.boundary = [](const SpherePoint& z) {
      return z.coords()[0] * z.coords()[0] - z.coords()[1] * z.coords()[1];
    };
    out.push_back(std::move(m));
  }
  {
    Manufactured m;
    m.name = "one-minus-r2-sq";
    m.u = one_minus_r2_squared(n);
    m.t_alpha_u = [n, a](const Vec& x) {
      const double r2 = norm_sq(x);
      const double w = 1.0 - r2;
      return w * (8.0 * r2 - 4.0 * n * w) - 8.0 * a * w * r2 +
             (n - 2.0 - a) * a * w * w;
    };
    m.boundary = [](const SpherePoint&) { return 0.0; };
    out.push_back(std::move(m));
  }
  return out;
}

Manufactured manufactured_case(const Params& p, const std::string& name) {
  for (auto& m : manufactured_corpus(p))
    if (m.name == name) return m;
  throw std::invalid_argument("manufactured_case: unknown case '" + name +
                              "' (try one-minus-r2, x1, x1sq-x2sq, "
                              "one-minus-r2-sq, kernel-slice)");
}

Manufactured poisson_extension_case(const Params& p,
                                    const quadrature::SphereRule& rule) {
  auto trace = [](const SpherePoint& z) { return 1.0 + z.coords()[0]; };
  auto rule_ptr = std::make_shared<quadrature::SphereRule>(rule);
  const Params params = p;
  const double c = kernels::calibrate_c_alpha(p);

  Manufactured m;
  m.name = "kernel-slice";
  m.boundary = trace;
  m.t_alpha_u = [](const Vec&) { return 0.0; };
  m.u.value = [params, rule_ptr, trace](const Vec& x) {
    if (norm(x) >= 1.0 - 1e-12) return trace(SpherePoint::normalized(x));
    const BallPoint bx(x);
    return quadrature::integrate_sphere(
        *rule_ptr, [&](const SpherePoint& z) {
          return kernels::poisson_kernel(params, bx, z) * trace(z);
        });
  };
  // differentiate under the integral via the kernel-slice analytic parts
  m.u.gradient = [params, rule_ptr, trace, c](const Vec& x) {
    Vec g(x.size(), 0.0);
    for (std::size_t j = 0; j < rule_ptr->nodes.size(); ++j) {
      const SpherePoint& z = rule_ptr->nodes[j];
      const KernelSlice slice{params, z.coords(), c};
      const Vec gj = slice.gradient(x);
      const double w = rule_ptr->weights[j] * trace(z);
      for (std::size_t i = 0; i < g.size(); ++i) g[i] += w * gj[i];
    }
    return g;
  };
  m.u.laplacian = [params, rule_ptr, trace, c](const Vec& x) {
    double acc = 0.0;
    for (std::size_t j = 0; j < rule_ptr->nodes.size(); ++j) {
      const SpherePoint& z = rule_ptr->nodes[j];
      const KernelSlice slice{params, z.coords(), c};
      acc += rule_ptr->weights[j] * trace(z) * slice.laplacian(x);
    }
    return acc;
  };
  return m;
}

}  // namespace talpha::fields
