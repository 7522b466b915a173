#include "talpha/quadrature.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "talpha/specfun.hpp"

namespace talpha::quadrature {

namespace {

constexpr double kPi = specfun::kPi;

struct Grid1d {
  std::vector<double> x;
  std::vector<double> w;
};

// Composite Gauss-Legendre over consecutive panels.
Grid1d composite_gl(const std::vector<double>& breakpoints, int per_panel) {
  std::vector<double> gx, gw;
  gauss_legendre(per_panel, gx, gw);
  Grid1d out;
  for (std::size_t p = 0; p + 1 < breakpoints.size(); ++p) {
    const double lo = breakpoints[p], hi = breakpoints[p + 1];
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    for (int i = 0; i < per_panel; ++i) {
      out.x.push_back(mid + half * gx[i]);
      out.w.push_back(half * gw[i]);
    }
  }
  return out;
}

// Polar-angle breakpoints geometrically refined toward theta = 0.
std::vector<double> pole_graded_breakpoints(double theta_min) {
  std::vector<double> rev;
  rev.push_back(kPi);
  double t = kPi / 2.0;
  while (t > theta_min) {
    rev.push_back(t);
    t /= 2.0;
  }
  rev.push_back(0.0);
  return {rev.rbegin(), rev.rend()};
}

// Householder reflection taking e_n to axis (no-op when already aligned).
void rotate_pole_to(std::vector<SpherePoint>& nodes, const Vec& axis) {
  const int n = static_cast<int>(axis.size());
  Vec v(axis.size());
  double vnorm2 = 0.0;
  for (int i = 0; i < n; ++i) {
    v[i] = (i == n - 1 ? 1.0 : 0.0) - axis[i];
    vnorm2 += v[i] * v[i];
  }
  if (vnorm2 < 1e-28) return;
  std::vector<SpherePoint> rotated;
  rotated.reserve(nodes.size());
  for (const SpherePoint& s : nodes) {
    const Vec& x = s.coords();
    const double proj = 2.0 * dot(v, x) / vnorm2;
    Vec y(x.size());
    for (int i = 0; i < n; ++i) y[i] = x[i] - proj * v[i];
    rotated.push_back(SpherePoint::normalized(std::move(y)));
  }
  nodes = std::move(rotated);
}

SphereRule build_sphere_rule(int n, int order, const Grid1d& polar0,
                             const std::string& grading) {
  if (n < 2) throw std::invalid_argument("sphere_rule: requires n >= 2");
  if (order < 2) throw std::invalid_argument("sphere_rule: requires order >= 2");

  // polar angle grids: the first may be graded, the rest are plain GL on (0,pi)
  std::vector<Grid1d> polar(std::max(0, n - 2));
  if (n >= 3) {
    polar[0] = polar0;
    if (n > 3) {
      const Grid1d plain = composite_gl({0.0, kPi}, order);
      for (int k = 1; k < n - 2; ++k) polar[k] = plain;
    }
  }
  const int m_az = std::max(4, 2 * order);

  SphereRule rule;
  rule.n = n;
  rule.order = order;
  rule.grading = grading;

  // iterate the tensor product: indices over polar angles plus azimuth
  std::vector<std::size_t> idx(std::max(0, n - 2), 0);
  const double w_az = 2.0 * kPi / m_az;
  bool done = false;
  while (!done) {
    double wpolar = 1.0;
    Vec trig_cos(std::max(0, n - 2)), trig_sin(std::max(0, n - 2));
    for (int k = 0; k < n - 2; ++k) {
      const double th = polar[k].x[idx[k]];
      trig_cos[k] = std::cos(th);
      trig_sin[k] = std::sin(th);
      wpolar *= polar[k].w[idx[k]] * std::pow(trig_sin[k], n - 2 - k);
    }
    for (int j = 0; j < m_az; ++j) {
      const double phi = 2.0 * kPi * j / m_az;
      Vec x(n);
      double run = 1.0;
      for (int k = 0; k < n - 2; ++k) {
        x[n - 1 - k] = run * trig_cos[k];
        run *= trig_sin[k];
      }
      x[1] = run * std::cos(phi);
      x[0] = run * std::sin(phi);
      rule.nodes.push_back(SpherePoint::normalized(std::move(x)));
      rule.weights.push_back(wpolar * w_az);
    }
    // advance multi-index
    done = true;
    for (int k = 0; k < n - 2; ++k) {
      if (++idx[k] < polar[k].x.size()) {
        done = false;
        break;
      }
      idx[k] = 0;
    }
    if (n == 2) break;
  }

  // compensated sum keeps the normalization defect at the 1e-15 level
  // even for rules with ~1e5 nodes
  double total = 0.0, comp = 0.0;
  for (double w : rule.weights) {
    const double y = w - comp;
    const double t = total + y;
    comp = (t - total) - y;
    total = t;
  }
  for (double& w : rule.weights) w /= total;
  return rule;
}

// Radial breakpoints for ball rules: graded toward 0 on [0, 0.1], a few
// equal panels through the interior, geometric halving toward 1.
std::vector<double> radial_breakpoints(double r_lo, double r_hi) {
  std::vector<double> bps;
  double mid_lo = r_lo, mid_hi = r_hi;
  if (r_lo == 0.0) {
    bps.push_back(0.0);
    double t = 1e-3;
    while (t < 0.1 * (1.0 - 1e-12)) {
      bps.push_back(t);
      t *= std::pow(10.0, 1.0 / 3.0);
    }
    bps.push_back(0.1);
    mid_lo = 0.1;
  } else {
    bps.push_back(r_lo);
  }
  std::vector<double> tail;
  if (r_hi == 1.0) {
    double t = 1.0;
    double width = 1e-4;
    while (t - width > 0.9) {
      tail.push_back(t);
      t -= width;
      width = std::min(width * 2.0, 0.05);
    }
    tail.push_back(t);
    mid_hi = t;
  } else {
    tail.push_back(r_hi);
    mid_hi = r_hi;
  }
  const int mid_panels = 4;
  if (mid_hi > mid_lo) {
    for (int i = 1; i < mid_panels; ++i)
      bps.push_back(mid_lo + (mid_hi - mid_lo) * i / mid_panels);
  }
  for (auto it = tail.rbegin(); it != tail.rend(); ++it) bps.push_back(*it);
  return bps;
}

BallRule build_ball_rule(const Params& p, double r_lo, double r_hi,
                         int radial_order, int sphere_order) {
  if (radial_order < 2 || sphere_order < 2)
    throw std::invalid_argument("ball_rule: orders must be >= 2");
  if (!(0.0 <= r_lo && r_lo < r_hi && r_hi <= 1.0))
    throw std::invalid_argument("ball_rule: need 0 <= r_lo < r_hi <= 1");

  const Grid1d radial =
      composite_gl(radial_breakpoints(r_lo, r_hi), radial_order);
  const SphereRule sph = sphere_rule(p.n, sphere_order);
  const double area = sphere_area(p.n);

  BallRule rule;
  rule.n = p.n;
  rule.radial_order = radial_order;
  rule.sphere_order = sphere_order;
  rule.r_lo = r_lo;
  rule.r_hi = r_hi;
  rule.grading = "radial-graded-v1";
  rule.nodes.reserve(radial.x.size() * sph.nodes.size());
  rule.weights.reserve(radial.x.size() * sph.nodes.size());
  for (std::size_t i = 0; i < radial.x.size(); ++i) {
    const double r = radial.x[i];
    const double wr = radial.w[i] * std::pow(r, p.n - 1) * area;
    for (std::size_t j = 0; j < sph.nodes.size(); ++j) {
      rule.nodes.push_back(BallPoint(scale(r, sph.nodes[j].coords())));
      rule.weights.push_back(wr * sph.weights[j]);
    }
  }
  return rule;
}

std::string sanitize(const std::string& s) {
  std::string out;
  for (char c : s)
    out.push_back(std::isalnum(static_cast<unsigned char>(c)) ? c : '-');
  return out;
}

}  // namespace

void gauss_legendre(int count, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  nodes.assign(count, 0.0);
  weights.assign(count, 0.0);
  const int half = (count + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (count + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < count; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = count * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    nodes[i] = -z;
    nodes[count - 1 - i] = z;
    weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    weights[count - 1 - i] = weights[i];
  }
}

double sphere_area(int n) {
  return 2.0 * std::pow(kPi, n / 2.0) / specfun::gamma(n / 2.0);
}

SphereRule sphere_rule(int n, int order) {
  Grid1d polar0;
  if (n >= 3) polar0 = composite_gl({0.0, kPi}, order);
  return build_sphere_rule(n, order, polar0, "plain");
}

SphereRule sphere_rule_pole_graded(int n, int order, double theta_min,
                                   const Vec* axis) {
  if (!(theta_min > 0.0 && theta_min < 1.0))
    throw std::invalid_argument("sphere_rule_pole_graded: theta_min in (0,1)");
  Grid1d polar0;
  if (n >= 3) polar0 = composite_gl(pole_graded_breakpoints(theta_min), order);
  char tag[64];
  std::snprintf(tag, sizeof(tag), "pole-graded(theta_min=%.3g)", theta_min);
  SphereRule rule = build_sphere_rule(n, order, polar0, tag);
  if (axis) {
    if (static_cast<int>(axis->size()) != n)
      throw std::invalid_argument("sphere_rule_pole_graded: axis dimension");
    rotate_pole_to(rule.nodes, *axis);
  }
  return rule;
}

BallRule ball_rule(const Params& p, int radial_order, int sphere_order) {
  return build_ball_rule(p, 0.0, 1.0, radial_order, sphere_order);
}

BallRule ball_rule_interval(const Params& p, double r_lo, double r_hi,
                            int radial_order, int sphere_order) {
  return build_ball_rule(p, r_lo, r_hi, radial_order, sphere_order);
}

double integrate_sphere(const SphereRule& rule,
                        const std::function<double(const SpherePoint&)>& f) {
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    double v;
    try {
      v = f(rule.nodes[i]);
    } catch (const std::exception& e) {
      throw std::runtime_error("integrate_sphere: integrand failed at node " +
                               std::to_string(i) + ": " + e.what());
    }
    acc += rule.weights[i] * v;
  }
  return acc;
}

double integrate_ball(const BallRule& rule,
                      const std::function<double(const BallPoint&)>& f) {
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    double v;
    try {
      v = f(rule.nodes[i]);
    } catch (const std::exception& e) {
      throw std::runtime_error("integrate_ball: integrand failed at node " +
                               std::to_string(i) + " (|y| = " +
                               std::to_string(rule.nodes[i].norm()) +
                               "): " + e.what());
    }
    acc += rule.weights[i] * v;
  }
  return acc;
}

namespace {

void write_rows(std::ofstream& out, int dim,
                const std::vector<double>& flat_coords,
                const std::vector<double>& weights) {
  char buf[32];
  for (std::size_t i = 0; i < weights.size(); ++i) {
    std::string line;
    for (int d = 0; d < dim; ++d) {
      std::snprintf(buf, sizeof(buf), "%.17g", flat_coords[i * dim + d]);
      line += buf;
      line += ',';
    }
    std::snprintf(buf, sizeof(buf), "%.17g", weights[i]);
    line += buf;
    out << line << '\n';
  }
}

std::vector<std::vector<double>> read_rows(std::ifstream& in,
                                           std::string* header) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (header && header->empty()) *header = line;
      continue;
    }
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

void save_rule_csv(const SphereRule& rule, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_rule_csv: cannot open " + path);
  out << "# talpha sphere rule,n=" << rule.n << ",order=" << rule.order
      << ",grading=" << rule.grading << '\n';
  std::vector<double> flat;
  flat.reserve(rule.nodes.size() * rule.n);
  for (const auto& s : rule.nodes)
    flat.insert(flat.end(), s.coords().begin(), s.coords().end());
  write_rows(out, rule.n, flat, rule.weights);
}

SphereRule load_sphere_rule_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_sphere_rule_csv: cannot open " + path);
  std::string header;
  auto rows = read_rows(in, &header);
  if (rows.empty()) throw std::runtime_error("load_sphere_rule_csv: empty file");
  SphereRule rule;
  rule.n = static_cast<int>(rows.front().size()) - 1;
  std::sscanf(header.c_str(), "# talpha sphere rule,n=%*d,order=%d",
              &rule.order);
  const auto g = header.find("grading=");
  if (g != std::string::npos) rule.grading = header.substr(g + 8);
  double total = 0.0;
  for (auto& row : rows) {
    rule.weights.push_back(row.back());
    total += row.back();
    row.pop_back();
    rule.nodes.push_back(SpherePoint::normalized(std::move(row)));
  }
  if (std::abs(total - 1.0) > 1e-10)
    throw std::runtime_error("load_sphere_rule_csv: weights do not sum to 1");
  return rule;
}

void save_rule_csv(const BallRule& rule, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_rule_csv: cannot open " + path);
  out << "# talpha ball rule,n=" << rule.n << ",radial_order="
      << rule.radial_order << ",sphere_order=" << rule.sphere_order
      << ",r_lo=" << rule.r_lo << ",r_hi=" << rule.r_hi
      << ",grading=" << rule.grading << '\n';
  std::vector<double> flat;
  flat.reserve(rule.nodes.size() * rule.n);
  for (const auto& s : rule.nodes)
    flat.insert(flat.end(), s.coords().begin(), s.coords().end());
  write_rows(out, rule.n, flat, rule.weights);
}

BallRule load_ball_rule_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_ball_rule_csv: cannot open " + path);
  std::string header;
  auto rows = read_rows(in, &header);
  if (rows.empty()) throw std::runtime_error("load_ball_rule_csv: empty file");
  BallRule rule;
  rule.n = static_cast<int>(rows.front().size()) - 1;
  std::sscanf(header.c_str(),
              "# talpha ball rule,n=%*d,radial_order=%d,sphere_order=%d",
              &rule.radial_order, &rule.sphere_order);
  const auto g = header.find("grading=");
  if (g != std::string::npos) rule.grading = header.substr(g + 8);
  for (auto& row : rows) {
    rule.weights.push_back(row.back());
    row.pop_back();
    rule.nodes.push_back(BallPoint(std::move(row)));
  }
  return rule;
}

SphereRule sphere_rule_cached(int n, int order, const std::string& cache_dir) {
  if (cache_dir.empty()) return sphere_rule(n, order);
  namespace fs = std::filesystem;
  fs::create_directories(cache_dir);
  const std::string path = cache_dir + "/sphere_n" + std::to_string(n) + "_o" +
                           std::to_string(order) + "_plain.csv";
  if (fs::exists(path)) {
    try {
      return load_sphere_rule_csv(path);
    } catch (const std::exception&) {
      // stale or corrupt cache entry: rebuild
    }
  }
  SphereRule rule = sphere_rule(n, order);
  save_rule_csv(rule, path);
  return rule;
}

BallRule ball_rule_cached(const Params& p, int radial_order, int sphere_order,
                          const std::string& cache_dir) {
  if (cache_dir.empty()) return ball_rule(p, radial_order, sphere_order);
  namespace fs = std::filesystem;
  fs::create_directories(cache_dir);
  const std::string path = cache_dir + "/ball_n" + std::to_string(p.n) + "_r" +
                           std::to_string(radial_order) + "_s" +
                           std::to_string(sphere_order) + "_" +
                           sanitize("radial-graded-v1") + ".csv";
  if (fs::exists(path)) {
    try {
      return load_ball_rule_csv(path);
    } catch (const std::exception&) {
    }
  }
  BallRule rule = ball_rule(p, radial_order, sphere_order);
  save_rule_csv(rule, path);
  return rule;
}

}  // namespace talpha::quadrature
