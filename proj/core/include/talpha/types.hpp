#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace talpha {

// Dense real vector; dimensions here are tiny (n <= 6), so plain loops win.
using Vec = std::vector<double>;

// Warning sink shared by routines that can degrade gracefully (clamped
// finite-difference steps, under-resolved kernels, ...). Pass nullptr to
// ignore warnings.
using Warnings = std::vector<std::string>;

struct PoleError : std::domain_error {
  using std::domain_error::domain_error;
};
struct SingularPointError : std::domain_error {
  using std::domain_error::domain_error;
};
struct DegenerateParameterError : std::domain_error {
  using std::domain_error::domain_error;
};
struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline double dot(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

inline double norm_sq(std::span<const double> x) { return dot(x, x); }
inline double norm(std::span<const double> x) { return std::sqrt(norm_sq(x)); }

inline Vec add(std::span<const double> a, std::span<const double> b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Vec sub(std::span<const double> a, std::span<const double> b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Vec scale(double c, std::span<const double> a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

inline double dist(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

// Points with |coords| within this distance of 1 count as boundary points.
inline constexpr double kBoundaryTol = 1e-14;

// Dimension n >= 3 and weight alpha > -1 shared by all kernel math.
struct Params {
  int n;
  double alpha;

  Params(int n_, double alpha_) : n(n_), alpha(alpha_) {
    if (n < 3) throw std::invalid_argument("Params: dimension n must be >= 3");
    if (!(alpha > -1.0))
      throw std::invalid_argument("Params: weight alpha must be > -1");
  }
};

// Point in the open unit ball with cached Euclidean norm.
class BallPoint {
 public:
  explicit BallPoint(Vec coords)
      : coords_(std::move(coords)), norm_(talpha::norm(coords_)) {
    if (!(norm_ < 1.0))
      throw std::domain_error("BallPoint: |x| must be < 1, got " +
                              std::to_string(norm_));
  }

  const Vec& coords() const { return coords_; }
  double norm() const { return norm_; }
  int dim() const { return static_cast<int>(coords_.size()); }

 private:
  Vec coords_;
  double norm_;
};

// Point on the unit sphere S^{n-1}.
class SpherePoint {
 public:
  explicit SpherePoint(Vec coords) : coords_(std::move(coords)) {
    const double r = talpha::norm(coords_);
    if (std::abs(r - 1.0) > kBoundaryTol)
      throw std::domain_error("SpherePoint: |coords| must equal 1, got " +
                              std::to_string(r));
  }

  // Rescales to unit norm; rejects the zero vector.
  static SpherePoint normalized(Vec coords) {
    const double r = talpha::norm(coords);
    if (r == 0.0)
      throw std::domain_error("SpherePoint: cannot normalize zero vector");
    for (double& c : coords) c /= r;
    return SpherePoint(std::move(coords));
  }

  const Vec& coords() const { return coords_; }
  int dim() const { return static_cast<int>(coords_.size()); }

 private:
  Vec coords_;
};

}  // namespace talpha
