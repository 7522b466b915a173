#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "output.hpp"
#include "talpha/estimates.hpp"
#include "talpha/fields.hpp"
#include "talpha/kernels.hpp"
#include "talpha/moebius.hpp"
#include "talpha/operators.hpp"
#include "talpha/quadrature.hpp"
#include "talpha/solver.hpp"
#include "talpha/specfun.hpp"

namespace talpha::cli {

namespace {

// deterministic uniform in [0,1)
double uniform01(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

Vec random_unit(std::mt19937_64& rng, int n) {
  Vec v(n);
  for (int i = 0; i < n; i += 2) {
    const double u1 = std::max(uniform01(rng), 1e-300);
    const double u2 = uniform01(rng);
    const double r = std::sqrt(-2.0 * std::log(u1));
    v[i] = r * std::cos(2.0 * specfun::kPi * u2);
    if (i + 1 < n) v[i + 1] = r * std::sin(2.0 * specfun::kPi * u2);
  }
  const double nr = norm(v);
  for (double& c : v) c /= nr;
  return v;
}

BallPoint random_ball(std::mt19937_64& rng, int n, double rmax = 0.95) {
  Vec v = random_unit(rng, n);
  const double r = rmax * std::pow(uniform01(rng), 1.0 / n);
  for (double& c : v) c *= r;
  return BallPoint(std::move(v));
}

std::string join_path(const std::string& dir, const std::string& file) {
  return (std::filesystem::path(dir) / file).string();
}

struct Check {
  std::string name;
  double value = 0;
  double tolerance = 0;
  bool pass = false;
};

int emit_checks(const RunConfig& cfg, const std::string& csv_name,
                const std::string& json_name, std::vector<Check> checks) {
  CsvWriter csv(join_path(cfg.out_dir, csv_name), cfg.to_json(),
                {"check", "value", "tolerance", "pass"});
  nlohmann::json summary = nlohmann::json::object();
  bool all_pass = true;
  for (const auto& c : checks) {
    csv.raw_row({c.name, format_number(c.value), format_number(c.tolerance),
                 c.pass ? "1" : "0"});
    summary[c.name] = {{"value", c.value},
                       {"tolerance", c.tolerance},
                       {"pass", c.pass}};
    std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name
              << "  value=" << format_number(c.value)
              << "  tol=" << format_number(c.tolerance) << "\n";
    if (!c.pass) {
      std::cerr << "tolerance failure: " << c.name << " = "
                << format_number(c.value) << " exceeds "
                << format_number(c.tolerance) << "\n";
      all_pass = false;
    }
  }
  write_json(join_path(cfg.out_dir, json_name), cfg.to_json(), summary);
  return all_pass ? kExitOk : kExitToleranceFailure;
}

fields::Manufactured pick_case(const Params& p, const std::string& name,
                               const std::string& cache_dir) {
  if (name == "kernel-slice")
    return fields::poisson_extension_case(
        p, quadrature::sphere_rule_cached(p.n, 48, cache_dir));
  return fields::manufactured_case(p, name);
}

std::vector<Check> moebius_checks(const RunConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  double worst_inv = 0, worst_prod = 0, worst_brk = 0, worst_bnd = 0;
  for (int n : {3, 4, 5}) {
    for (int i = 0; i < cfg.samples; ++i) {
      const auto x = random_ball(rng, n);
      const auto y = random_ball(rng, n);
      const double br = moebius::bracket(x.coords(), y.coords());
      const Vec img = moebius::moebius_map(x.coords(), y.coords());
      worst_prod = std::max(
          worst_prod, std::abs((1.0 - norm_sq(img)) -
                               (1.0 - norm_sq(x.coords())) *
                                   (1.0 - norm_sq(y.coords())) / (br * br)));
      worst_brk = std::max(
          worst_brk, std::abs(moebius::bracket(x.coords(), img) -
                              (1.0 - norm_sq(x.coords())) / br));
      worst_inv = std::max(
          worst_inv, dist(moebius::moebius_map(x.coords(), img), y.coords()));
      const Vec zeta = random_unit(rng, n);
      worst_bnd = std::max(
          worst_bnd,
          std::abs(norm(moebius::moebius_map(x.coords(), zeta)) - 1.0));
    }
  }
  return {{"moebius_involution", worst_inv, 1e-12, worst_inv < 1e-12},
          {"moebius_norm_identity", worst_prod, 1e-12, worst_prod < 1e-12},
          {"moebius_bracket_identity", worst_brk, 1e-12, worst_brk < 1e-12},
          {"moebius_boundary_preservation", worst_bnd, 1e-12,
           worst_bnd < 1e-12}};
}

}  // namespace

nlohmann::json RunConfig::to_json() const {
  nlohmann::json j;
  j["command"] = command;
  j["n"] = n;
  j["alpha"] = alpha;
  j["sphere_order"] = sphere_order;
  j["radial_order"] = radial_order;
  j["out_dir"] = out_dir;
  if (command == "kernel") j["ray"] = ray;
  if (command == "solve") {
    j["case"] = case_name;
    j["hyperbolic"] = hyperbolic;
    j["phi_csv"] = phi_csv;
    j["convergence"] = convergence;
  }
  if (command == "verify") {
    j["all"] = all;
    j["suite"] = suite;
  }
  if (command == "asymptotics") {
    j["experiment"] = experiment;
    j["beta"] = beta;
    j["s"] = s_exponent;
    j["radii_count"] = radii_count;
  }
  if (command == "mobius") {
    j["self_test"] = self_test;
    j["seed"] = seed;
    j["samples"] = samples;
  }
  return j;
}

int cmd_kernel(const RunConfig& cfg) {
  const Params p(cfg.n, cfg.alpha);
  double lo = 0, hi = 0.99;
  int count = 100;
  {
    std::stringstream ss(cfg.ray);
    std::string cell;
    std::getline(ss, cell, ':');
    lo = std::stod(cell);
    std::getline(ss, cell, ':');
    hi = std::stod(cell);
    std::getline(ss, cell, ':');
    count = std::stoi(cell);
  }
  if (!(0.0 <= lo && lo < hi && hi < 1.0) || count < 2)
    throw std::invalid_argument("kernel: --ray must be lo:hi:count with "
                                "0 <= lo < hi < 1 and count >= 2");

  const auto kc = kernels::constants(p);
  const kernels::RadialGreen green(p);
  const specfun::HypParams k_params((p.alpha + p.n) / 2.0,
                                    (p.alpha + 2.0) / 2.0, p.alpha + 2.0);
  const double k_limit =
      specfun::gamma(p.alpha + 2.0) * specfun::gamma((p.n - 2.0) / 2.0) /
      (specfun::gamma((p.alpha + p.n) / 2.0) *
       specfun::gamma((p.alpha + 2.0) / 2.0));

  CsvWriter csv(join_path(cfg.out_dir, "kernel_ray.csv"), cfg.to_json(),
                {"r", "P_alpha_center_ray", "G_alpha", "RG_alpha", "h_alpha",
                 "k_alpha"});
  // P column: kernel at x = r e_1 against the boundary point zeta = e_1
  Vec e1(cfg.n, 0.0);
  e1[0] = 1.0;
  const SpherePoint zeta(e1);
  for (int i = 0; i < count; ++i) {
    const double r = lo + (hi - lo) * i / (count - 1);
    const BallPoint x(scale(r, e1));
    const double pk = kernels::poisson_kernel(p, x, zeta);
    if (r < 1e-12) {
      const double inf = std::numeric_limits<double>::infinity();
      // G, RG, h are singular at the origin; k extends by its limit
      csv.row({r, pk, -inf, inf, -inf, k_limit});
      continue;
    }
    csv.row({r, pk, green(r), kernels::green_radial_derivative(p, r),
             kernels::h_alpha_density(p, r), kernels::k_alpha(p, r)});
  }

  const auto audit = solver::run_sign_audit(
      p, quadrature::ball_rule_cached(p, 8, 10, cfg.cache_dir));
  nlohmann::json out;
  out["c_alpha_paper"] = kc.c_alpha_paper;
  out["c_alpha_calibrated"] = kc.c_alpha_calibrated;
  out["c_alpha_paper_over_calibrated"] =
      kc.c_alpha_paper / kc.c_alpha_calibrated;
  out["d_alpha_paper"] = kc.d_alpha_paper;
  out["green_normalizer"] = kc.green_normalizer;
  out["sphere_area"] = kc.sphere_area;
  out["sign_audit"] = {{"green_sign", audit.green_sign},
                       {"measured_scale_ratio", audit.measured_scale_ratio},
                       {"notes", audit.notes}};
  write_json(join_path(cfg.out_dir, "kernel_constants.json"), cfg.to_json(),
             out);
  return kExitOk;
}

int cmd_solve(const RunConfig& cfg) {
  const Params p(cfg.n, cfg.alpha);
  if (cfg.hyperbolic && std::abs(cfg.alpha - (cfg.n - 2.0)) > 1e-12)
    throw std::invalid_argument("solve: --hyperbolic requires alpha = n-2");

  const auto sphere =
      quadrature::sphere_rule_cached(cfg.n, cfg.sphere_order, cfg.cache_dir);
  const auto ball = quadrature::ball_rule_cached(p, cfg.radial_order,
                                                 cfg.sphere_order, cfg.cache_dir);
  const auto grid = solver::default_grid(cfg.n);

  std::function<double(const SpherePoint&)> phi;
  std::function<double(const Vec&)> psi = [](const Vec&) { return 0.0; };
  std::optional<fields::Manufactured> reference;

  if (!cfg.phi_csv.empty()) {
    std::ifstream in(cfg.phi_csv);
    if (!in)
      throw std::invalid_argument("solve: cannot open --phi-csv file " +
                                  cfg.phi_csv);
    std::vector<double> values;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      values.push_back(std::stod(line));
    }
    if (values.size() != sphere.nodes.size())
      throw std::invalid_argument(
          "solve: --phi-csv row count " + std::to_string(values.size()) +
          " does not match the sphere rule node count " +
          std::to_string(sphere.nodes.size()));
    auto stored = std::make_shared<std::vector<double>>(std::move(values));
    auto rule_nodes = std::make_shared<std::vector<SpherePoint>>(sphere.nodes);
    phi = [stored, rule_nodes](const SpherePoint& z) {
      // nearest rule node; the rule and the data share the node order
      std::size_t best = 0;
      double best_d = 1e300;
      for (std::size_t i = 0; i < rule_nodes->size(); ++i) {
        const double d = dist(z.coords(), (*rule_nodes)[i].coords());
        if (d < best_d) {
          best_d = d;
          best = i;
        }
      }
      return (*stored)[best];
    };
  } else {
    reference = pick_case(p, cfg.case_name, cfg.cache_dir);
    phi = reference->boundary;
    psi = reference->t_alpha_u;
  }

  solver::DirichletProblem prob{p, phi, psi, std::nullopt};

  std::vector<double> values;
  if (cfg.hyperbolic) {
    values.reserve(grid.size());
    for (const auto& x : grid)
      values.push_back(
          solver::dirichlet_solve_hyperbolic_at(prob, x, sphere, ball));
  } else {
    values = solver::dirichlet_solve(prob, grid, sphere, ball);
  }

  std::vector<std::string> cols;
  for (int i = 1; i <= cfg.n; ++i) cols.push_back("x" + std::to_string(i));
  cols.push_back("u_numeric");
  if (reference) {
    cols.push_back("u_reference");
    cols.push_back("abs_error");
  }
  CsvWriter csv(join_path(cfg.out_dir, "solve_samples.csv"), cfg.to_json(),
                cols);
  double sup = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::vector<double> row(grid[i].coords().begin(), grid[i].coords().end());
    row.push_back(values[i]);
    if (reference) {
      const double ref = reference->u.value(grid[i].coords());
      row.push_back(ref);
      row.push_back(std::abs(values[i] - ref));
      sup = std::max(sup, std::abs(values[i] - ref));
    }
    csv.row(row);
  }

  nlohmann::json report;
  if (reference) {
    report["case"] = reference->name;
    report["sup_error"] = sup;
    const auto audit = solver::run_sign_audit(p, ball);
    report["sign_audit_outcome"] = audit.green_sign;
    report["green_scale_ratio"] = audit.measured_scale_ratio;
    if (cfg.convergence && !cfg.hyperbolic) {
      const auto rep = solver::verify_representation(
          p, *reference, grid,
          {{cfg.sphere_order / 2, std::max(4, cfg.radial_order / 2)},
           {cfg.sphere_order, cfg.radial_order},
           {2 * cfg.sphere_order, 2 * cfg.radial_order}});
      CsvWriter conv(join_path(cfg.out_dir, "solve_convergence.csv"),
                     cfg.to_json(),
                     {"order", "sup_error", "runtime_seconds"});
      nlohmann::json rows = nlohmann::json::array();
      for (const auto& r : rep.convergence) {
        conv.row({static_cast<double>(r.sphere_order), r.sup_error,
                  r.runtime_seconds});
        rows.push_back({{"order", r.sphere_order},
                        {"sup_error", r.sup_error},
                        {"runtime_seconds", r.runtime_seconds}});
      }
      report["convergence"] = rows;
    }
  } else {
    report["case"] = "phi-csv";
    report["sup_error"] = nullptr;
  }
  write_json(join_path(cfg.out_dir, "verify_report.json"), cfg.to_json(),
             report);
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg) {
  std::vector<Check> checks;
  const bool want_all = cfg.all || cfg.suite.empty();
  const auto want = [&](const std::string& s) {
    return want_all || cfg.suite == s;
  };

  if (want("specfun")) {
    std::mt19937_64 rng(cfg.seed);
    double worst = 0;
    int checked = 0;
    while (checked < 200) {
      const double a = -5.0 + 10.0 * uniform01(rng);
      const double b = -5.0 + 10.0 * uniform01(rng);
      const double c = 0.5 + 5.5 * uniform01(rng);
      const double z = -0.9 + 1.8 * uniform01(rng);
      double term = 1.0, ref = 1.0;
      for (long k = 0; k < 4000000; ++k) {
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
        ref += term;
        if (std::abs(term) <= 1e-17 * std::abs(ref)) break;
      }
      if (std::abs(ref) < 1e-8) continue;
      const double got = specfun::hyp2f1(specfun::HypParams(a, b, c), z);
      worst = std::max(worst, std::abs(got - ref) / std::abs(ref));
      ++checked;
    }
    checks.push_back({"specfun_series_consistency", worst, 1e-9, worst < 1e-9});
    const double gauss = std::abs(
        specfun::hyp2f1_at_one(specfun::HypParams(0.5, 0.5, 2.0)) -
        4.0 / specfun::kPi);
    checks.push_back({"specfun_gauss_value", gauss, 1e-10, gauss < 1e-10});
  }

  if (want("mobius") || want("moebius")) {
    for (auto& c : moebius_checks(cfg)) checks.push_back(c);
  }

  if (want("kernels")) {
    const Params p(cfg.n, cfg.alpha);
    // T_alpha G = 0 (fd, relative to the local kernel scale)
    operators::ScalarField gfd;
    gfd.value = [&p](const Vec& x) { return kernels::green_radial(p, norm(x)); };
    gfd.fd_step = 3e-5;
    double worst = 0;
    for (double s : {0.2, 0.4, 0.6, 0.8}) {
      Vec x(cfg.n, 0.0);
      x[0] = 0.6 * s;
      x[1] = 0.8 * s;
      const double res = operators::t_alpha_apply(p, gfd, x);
      const double scale_loc = std::abs(kernels::green_radial(p, s)) +
                               std::abs(kernels::green_radial_derivative(p, s)) +
                               1.0;
      worst = std::max(worst, std::abs(res) / scale_loc);
    }
    checks.push_back(
        {"kernels_talpha_green_residual", worst, 1e-4, worst < 1e-4});

    // alpha = n-2 kernel match
    const Params ph(cfg.n, cfg.n - 2.0);
    std::mt19937_64 rng(cfg.seed + 1);
    double worst_match = 0;
    for (int i = 0; i < 50; ++i) {
      const auto x = random_ball(rng, cfg.n);
      const SpherePoint t = SpherePoint::normalized(random_unit(rng, cfg.n));
      const double a = kernels::poisson_kernel(ph, x, t);
      const double b = kernels::poisson_szego(x, t, cfg.n);
      worst_match = std::max(worst_match, std::abs(a / b - 1.0));
    }
    checks.push_back({"kernels_szego_match_at_alpha_nm2", worst_match, 1e-12,
                      worst_match < 1e-12});
  }

  if (want("solver")) {
    const Params p(cfg.n, cfg.alpha);
    const auto sphere =
        quadrature::sphere_rule_cached(cfg.n, 24, cfg.cache_dir);
    const auto ball = quadrature::ball_rule_cached(p, 10, 16, cfg.cache_dir);
    const auto audit = solver::run_sign_audit(p, ball);
    const double ratio_err = std::abs(audit.measured_scale_ratio - 1.0);
    checks.push_back({"solver_green_scale_ratio", ratio_err, 1e-6,
                      audit.green_sign == 1 && ratio_err < 1e-6});

    const auto m = fields::manufactured_case(p, "one-minus-r2");
    const double mv =
        std::abs(solver::mean_value_center(p, m.u, sphere, ball,
                                           audit.green_sign, m.t_alpha_u) -
                 m.u.value(Vec(cfg.n, 0.0)));
    checks.push_back({"solver_mean_value_center", mv, 1e-4, mv < 1e-4});

    solver::DirichletProblem prob{p, m.boundary, m.t_alpha_u, std::nullopt};
    const auto grid = solver::default_grid(cfg.n);
    const auto vals = solver::dirichlet_solve(prob, grid, sphere, ball);
    double sup = 0;
    for (std::size_t i = 0; i < grid.size(); ++i)
      sup = std::max(sup, std::abs(vals[i] - m.u.value(grid[i].coords())));
    checks.push_back({"solver_representation_sup", sup, 1e-3, sup < 1e-3});

    const auto u1 = fields::constant(1.0, cfg.n);
    const auto v1 = fields::one_minus_r2(cfg.n);
    const auto ball07 = quadrature::ball_rule_interval(p, 0.0, 0.7, 12, 24);
    const double gi = std::abs(solver::green_identity_residual(
        p, u1, v1, 0.7, quadrature::sphere_rule(cfg.n, 24), ball07));
    checks.push_back({"solver_green_identity", gi, 1e-6, gi < 1e-6});
  }

  if (want("estimates")) {
    const auto radii = estimates::geometric_radii(0.9, 0.9999, 10);
    std::vector<double> xs, ys;
    for (double r : radii) {
      xs.push_back(-std::log(1.0 - r));
      ys.push_back(estimates::disc_i_alpha(r, 0.0));
    }
    const int m = static_cast<int>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < m; ++i) {
      sx += xs[i];
      sy += ys[i];
      sxx += xs[i] * xs[i];
      sxy += xs[i] * ys[i];
    }
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / m;
    double ss_res = 0, ss_tot = 0;
    for (int i = 0; i < m; ++i) {
      ss_res += (ys[i] - intercept - slope * xs[i]) *
                (ys[i] - intercept - slope * xs[i]);
      ss_tot += (ys[i] - sy / m) * (ys[i] - sy / m);
    }
    const double r2 = 1.0 - ss_res / ss_tot;
    checks.push_back({"estimates_disc_log_fit_r2", r2, 0.99, r2 > 0.99});
  }

  if (checks.empty())
    throw std::invalid_argument("verify: unknown suite '" + cfg.suite +
                                "' (specfun|mobius|kernels|solver|estimates)");
  return emit_checks(cfg, "verify_results.csv", "verify_summary.json",
                     std::move(checks));
}

int cmd_asymptotics(const RunConfig& cfg) {
  const int n = cfg.n;
  const auto radii = estimates::geometric_radii(
      0.9, cfg.experiment == "disc_i_alpha" ? 0.9999 : 0.999, cfg.radii_count);
  const auto rule = quadrature::sphere_rule_pole_graded(n, cfg.sphere_order,
                                                        2e-5);
  nlohmann::json summary;
  summary["experiment"] = cfg.experiment;
  std::vector<std::pair<double, double>> samples;
  bool pass = true;

  if (cfg.experiment == "i_alpha") {
    for (double r : radii)
      samples.emplace_back(1.0 - r, estimates::i_alpha(r, cfg.alpha, n, rule));
    const auto fit = estimates::fit_exponent(samples);
    summary["fitted_exponent"] = fit.fitted_exponent;
    summary["r_squared"] = fit.r_squared;
    summary["expected_exponent"] = cfg.alpha - 1.0;
    pass = std::abs(fit.fitted_exponent - (cfg.alpha - 1.0)) < 0.1;
  } else if (cfg.experiment == "j_alpha_beta") {
    for (double r : radii)
      samples.emplace_back(
          1.0 - r,
          estimates::j_alpha_beta(r, cfg.alpha, cfg.beta, n, rule).second);
    const auto fit = estimates::fit_exponent(samples);
    summary["fitted_exponent"] = fit.fitted_exponent;
    summary["r_squared"] = fit.r_squared;
    summary["expected_exponent"] = cfg.beta - 1.0;
    pass = std::abs(fit.fitted_exponent - (cfg.beta - 1.0)) < 0.15;
  } else if (cfg.experiment == "d_integral") {
    for (double rho : radii)
      samples.emplace_back(
          1.0 - rho, estimates::d_integral(rho, rho, cfg.s_exponent, n, rule));
    if (cfg.s_exponent > n - 1.0) {
      const auto fit = estimates::fit_exponent(samples);
      summary["fitted_exponent"] = fit.fitted_exponent;
      summary["expected_exponent"] = -(cfg.s_exponent - n + 1.0);
      pass = std::abs(fit.fitted_exponent + (cfg.s_exponent - n + 1.0)) < 0.1;
    } else if (std::abs(cfg.s_exponent - (n - 1.0)) < 1e-12) {
      // linear fit against -log(1-rho)
      const int m = static_cast<int>(samples.size());
      double sx = 0, sy = 0, sxx = 0, sxy = 0;
      for (const auto& [gap, v] : samples) {
        const double x = -std::log(gap);
        sx += x; sy += v; sxx += x * x; sxy += x * v;
      }
      const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
      const double intercept = (sy - slope * sx) / m;
      double ss_res = 0, ss_tot = 0;
      for (const auto& [gap, v] : samples) {
        const double x = -std::log(gap);
        ss_res += (v - intercept - slope * x) * (v - intercept - slope * x);
        ss_tot += (v - sy / m) * (v - sy / m);
      }
      const double r2 = 1.0 - ss_res / ss_tot;
      summary["log_fit_r_squared"] = r2;
      pass = r2 > 0.99;
    } else {
      const auto fit = estimates::fit_exponent(samples);
      summary["fitted_exponent"] = fit.fitted_exponent;
      summary["expected_exponent"] = 0.0;
      pass = std::abs(fit.fitted_exponent) < 0.1;
    }
  } else if (cfg.experiment == "disc_i_alpha") {
    for (double r : radii)
      samples.emplace_back(1.0 - r, estimates::disc_i_alpha(r, cfg.alpha));
    if (cfg.alpha == 0.0) {
      const int m = static_cast<int>(samples.size());
      double sx = 0, sy = 0, sxx = 0, sxy = 0;
      for (const auto& [gap, v] : samples) {
        const double x = -std::log(gap);
        sx += x; sy += v; sxx += x * x; sxy += x * v;
      }
      const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
      const double intercept = (sy - slope * sx) / m;
      double ss_res = 0, ss_tot = 0;
      for (const auto& [gap, v] : samples) {
        const double x = -std::log(gap);
        ss_res += (v - intercept - slope * x) * (v - intercept - slope * x);
        ss_tot += (v - sy / m) * (v - sy / m);
      }
      const double r2 = 1.0 - ss_res / ss_tot;
      summary["log_fit_r_squared"] = r2;
      pass = r2 > 0.99;
    } else {
      // boundedness: the fitted exponent should not be negative
      const auto fit = estimates::fit_exponent(samples);
      summary["fitted_exponent"] = fit.fitted_exponent;
      summary["expected_exponent"] = 0.0;
      pass = fit.fitted_exponent > -0.1;
    }
  } else if (cfg.experiment == "gradient") {
    const Params p(n, cfg.alpha);
    Vec axis(n, 0.0);
    axis[n - 1] = 1.0;
    const auto graded =
        quadrature::sphere_rule_pole_graded(n, cfg.sphere_order, 2e-5, &axis);
    const SpherePoint x0(axis);
    const auto f = [&, beta = cfg.beta](const SpherePoint& z) {
      return std::pow(dist(z.coords(), x0.coords()), beta);
    };
    const auto fit = estimates::gradient_probe(
        p, f, x0, estimates::geometric_radii(0.9, 0.999, cfg.radii_count),
        graded);
    samples = fit.samples;
    summary["fitted_exponent"] = fit.fitted_exponent;
    summary["r_squared"] = fit.r_squared;
    summary["expected_exponent"] = cfg.beta - 1.0;
    pass = cfg.beta >= 1.0 ? fit.fitted_exponent > -0.1
                           : std::abs(fit.fitted_exponent - (cfg.beta - 1.0)) <
                                 0.15;
  } else {
    throw std::invalid_argument(
        "asymptotics: unknown --experiment '" + cfg.experiment +
        "' (i_alpha|j_alpha_beta|d_integral|disc_i_alpha|gradient)");
  }

  CsvWriter csv(join_path(cfg.out_dir, "asymptotics_" + cfg.experiment + ".csv"),
                cfg.to_json(), {"r", "value"});
  for (const auto& [gap, v] : samples) csv.row({1.0 - gap, v});
  summary["pass"] = pass;
  write_json(join_path(cfg.out_dir, "asymptotics_" + cfg.experiment + ".json"),
             cfg.to_json(), summary);
  if (!pass)
    std::cerr << "tolerance failure: asymptotics experiment "
              << cfg.experiment << "\n";
  return pass ? kExitOk : kExitToleranceFailure;
}

int cmd_mobius(const RunConfig& cfg) {
  if (!cfg.self_test)
    throw std::invalid_argument("mobius: nothing to do (use --self-test)");
  return emit_checks(cfg, "mobius_selftest.csv", "mobius_selftest.json",
                     moebius_checks(cfg));
}

}  // namespace talpha::cli
