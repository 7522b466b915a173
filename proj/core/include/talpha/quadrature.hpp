#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "talpha/types.hpp"

namespace talpha::quadrature {

// Node-weight rule for the normalized measure sigma on S^{n-1}
// (weights sum to 1).
struct SphereRule {
  int n = 0;
  int order = 0;
  std::string grading = "plain";
  std::vector<SpherePoint> nodes;
  std::vector<double> weights;
};

// Node-weight rule for Lebesgue measure dV on a radial interval of the
// unit ball (full ball by default). The radial mesh is graded toward 0
// (to resolve |y|^{2-n}) and toward 1 (kernel steepness).
struct BallRule {
  int n = 0;
  int radial_order = 0;
  int sphere_order = 0;
  double r_lo = 0.0;
  double r_hi = 1.0;
  std::string grading;
  std::vector<BallPoint> nodes;
  std::vector<double> weights;
};

// Product rule: Gauss-Legendre in each polar angle, trapezoid in the
// azimuth, the sin^k Jacobian absorbed into weights, then normalized.
SphereRule sphere_rule(int n, int order);

// Same construction with the first polar angle on panels geometrically
// refined toward the pole, down to theta_min. When axis is given the
// rule is rotated so the refined pole points along it. Used for
// integrands concentrated near a boundary point.
SphereRule sphere_rule_pole_graded(int n, int order, double theta_min,
                                   const Vec* axis = nullptr);

BallRule ball_rule(const Params& p, int radial_order, int sphere_order);
BallRule ball_rule_interval(const Params& p, double r_lo, double r_hi,
                            int radial_order, int sphere_order);

// Weighted sums in fixed node order; evaluation failures are rethrown
// with the offending node attached.
double integrate_sphere(const SphereRule& rule,
                        const std::function<double(const SpherePoint&)>& f);
double integrate_ball(const BallRule& rule,
                      const std::function<double(const BallPoint&)>& f);

// area of S^{n-1} = 2 pi^{n/2} / Gamma(n/2)
double sphere_area(int n);

// Text serialization (CSV rows: node coordinates, weight) for caching;
// cache files are keyed by (n, order, grading).
void save_rule_csv(const SphereRule& rule, const std::string& path);
SphereRule load_sphere_rule_csv(const std::string& path);
void save_rule_csv(const BallRule& rule, const std::string& path);
BallRule load_ball_rule_csv(const std::string& path);

// Cache-aware constructors; cache_dir == "" builds without caching.
SphereRule sphere_rule_cached(int n, int order, const std::string& cache_dir);
BallRule ball_rule_cached(const Params& p, int radial_order, int sphere_order,
                          const std::string& cache_dir);

// Gauss-Legendre nodes/weights on (-1,1) (exposed for tests).
void gauss_legendre(int count, std::vector<double>& nodes,
                    std::vector<double>& weights);

}  // namespace talpha::quadrature
