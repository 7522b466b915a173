#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "commands.hpp"
#include "talpha/types.hpp"
#include "talpha/version.hpp"

namespace {

using talpha::cli::RunConfig;

// Optional JSON config file; explicit flags win on conflict, so the file
// is applied first and CLI11 overwrites afterwards.
void apply_config_file(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--config", "cannot open " + path);
  nlohmann::json j;
  in >> j;
  if (j.contains("n")) cfg.n = j["n"].get<int>();
  if (j.contains("alpha")) cfg.alpha = j["alpha"].get<double>();
  if (j.contains("sphere_order")) cfg.sphere_order = j["sphere_order"].get<int>();
  if (j.contains("radial_order")) cfg.radial_order = j["radial_order"].get<int>();
  if (j.contains("out_dir")) cfg.out_dir = j["out_dir"].get<std::string>();
  if (j.contains("ray")) cfg.ray = j["ray"].get<std::string>();
  if (j.contains("case")) cfg.case_name = j["case"].get<std::string>();
  if (j.contains("hyperbolic")) cfg.hyperbolic = j["hyperbolic"].get<bool>();
  if (j.contains("experiment")) cfg.experiment = j["experiment"].get<std::string>();
  if (j.contains("beta")) cfg.beta = j["beta"].get<double>();
  if (j.contains("s")) cfg.s_exponent = j["s"].get<double>();
  if (j.contains("seed")) cfg.seed = j["seed"].get<unsigned long long>();
  if (j.contains("samples")) cfg.samples = j["samples"].get<int>();
}

void validate(const RunConfig& cfg) {
  const bool disc_ok = cfg.command == "asymptotics" &&
                       cfg.experiment == "disc_i_alpha";
  if (cfg.n < 3 && !disc_ok)
    throw std::invalid_argument("config: dimension n must be >= 3");
  if (!(cfg.alpha > -1.0))
    throw std::invalid_argument("config: weight alpha must be > -1");
  if (cfg.sphere_order < 2 || cfg.radial_order < 2)
    throw std::invalid_argument("config: quadrature orders must be >= 2");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"talpha: potential theory of the weighted Laplacian T_alpha "
               "on the unit ball"};
  app.set_version_flag("--version", std::string("talpha ") + talpha::kVersion);
  app.require_subcommand(1);

  RunConfig cfg;
  if (const char* env = std::getenv("TALPHA_CACHE_DIR")) cfg.cache_dir = env;
  std::string config_file;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_file, "JSON config file (flags win)");
    sub->add_option("--n", cfg.n, "ball dimension (>= 3)");
    sub->add_option("--alpha", cfg.alpha, "weight exponent (> -1)");
    sub->add_option("--sphere-order", cfg.sphere_order, "sphere rule order");
    sub->add_option("--radial-order", cfg.radial_order, "radial rule order");
    sub->add_option("--out", cfg.out_dir, "output directory");
  };

  auto* kernel = app.add_subcommand("kernel", "tabulate kernels along a ray");
  add_common(kernel);
  kernel->add_option("--ray", cfg.ray, "radial samples lo:hi:count");

  auto* solve = app.add_subcommand("solve", "solve a Dirichlet problem");
  add_common(solve);
  solve->add_option("--case", cfg.case_name,
                    "manufactured case (one-minus-r2|x1|x1sq-x2sq|"
                    "one-minus-r2-sq|kernel-slice)");
  solve->add_flag("--hyperbolic", cfg.hyperbolic,
                  "assemble with hyperbolic kernels (alpha = n-2)");
  solve->add_option("--phi-csv", cfg.phi_csv,
                    "boundary data sampled at the sphere rule nodes");
  solve->add_flag("--convergence", cfg.convergence,
                  "emit an order-doubling convergence table");

  auto* verify = app.add_subcommand("verify", "run verification checks");
  add_common(verify);
  verify->add_flag("--all", cfg.all, "run every suite");
  verify->add_option("--suite", cfg.suite,
                     "one of specfun|mobius|kernels|solver|estimates");
  verify->add_option("--seed", cfg.seed, "random seed");
  verify->add_option("--samples", cfg.samples, "sample count per identity");

  auto* asym = app.add_subcommand("asymptotics", "integral asymptotics lab");
  add_common(asym);
  asym->add_option("--experiment", cfg.experiment,
                   "i_alpha|j_alpha_beta|d_integral|disc_i_alpha|gradient");
  asym->add_option("--beta", cfg.beta, "Hoelder exponent");
  asym->add_option("--s", cfg.s_exponent, "bracket power for d_integral");
  asym->add_option("--radii", cfg.radii_count, "number of fit radii");

  auto* mob = app.add_subcommand("mobius", "Moebius-identity self test");
  add_common(mob);
  mob->add_flag("--self-test", cfg.self_test, "run the identity suite");
  mob->add_option("--seed", cfg.seed, "random seed");
  mob->add_option("--samples", cfg.samples, "sample count per dimension");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : talpha::cli::kExitConfigError;
  }

  try {
    if (!config_file.empty()) {
      // fill in file values for the options the user did not set
      RunConfig file_cfg;
      apply_config_file(config_file, file_cfg);
      CLI::App* sub = nullptr;
      for (auto* s : {kernel, solve, verify, asym, mob})
        if (s->parsed()) sub = s;
      if (sub) {
        if (!sub->count("--n")) cfg.n = file_cfg.n;
        if (!sub->count("--alpha")) cfg.alpha = file_cfg.alpha;
        if (!sub->count("--sphere-order"))
          cfg.sphere_order = file_cfg.sphere_order;
        if (!sub->count("--radial-order"))
          cfg.radial_order = file_cfg.radial_order;
        if (!sub->count("--out")) cfg.out_dir = file_cfg.out_dir;
        if (sub == kernel && !sub->count("--ray")) cfg.ray = file_cfg.ray;
        if (sub == solve && !sub->count("--case"))
          cfg.case_name = file_cfg.case_name;
        if (sub == solve && file_cfg.hyperbolic) cfg.hyperbolic = true;
        if (sub == asym) {
          if (!sub->count("--experiment")) cfg.experiment = file_cfg.experiment;
          if (!sub->count("--beta")) cfg.beta = file_cfg.beta;
          if (!sub->count("--s")) cfg.s_exponent = file_cfg.s_exponent;
        }
      }
    }

    if (kernel->parsed()) cfg.command = "kernel";
    if (solve->parsed()) cfg.command = "solve";
    if (verify->parsed()) cfg.command = "verify";
    if (asym->parsed()) cfg.command = "asymptotics";
    if (mob->parsed()) cfg.command = "mobius";

    validate(cfg);

    if (cfg.command == "kernel") return talpha::cli::cmd_kernel(cfg);
    if (cfg.command == "solve") return talpha::cli::cmd_solve(cfg);
    if (cfg.command == "verify") return talpha::cli::cmd_verify(cfg);
    if (cfg.command == "asymptotics") return talpha::cli::cmd_asymptotics(cfg);
    if (cfg.command == "mobius") return talpha::cli::cmd_mobius(cfg);
    std::cerr << "no subcommand selected\n";
    return talpha::cli::kExitConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return talpha::cli::kExitConfigError;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return talpha::cli::kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return talpha::cli::kExitNumericFailure;
  }
}
