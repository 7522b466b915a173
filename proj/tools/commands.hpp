#pragma once

#include <optional>
#include <string>

#include <json.hpp>

namespace talpha::cli {

// Exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitToleranceFailure = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitNumericFailure = 3;

struct RunConfig {
  std::string command;
  int n = 3;
  double alpha = 0.5;
  int sphere_order = 24;
  int radial_order = 12;
  std::string out_dir = ".";
  std::string cache_dir;  // from TALPHA_CACHE_DIR

  // kernel
  std::string ray = "0:0.99:100";

  // solve
  std::string case_name = "one-minus-r2";
  bool hyperbolic = false;
  std::string phi_csv;
  bool convergence = false;

  // verify
  bool all = false;
  std::string suite;

  // asymptotics
  std::string experiment = "i_alpha";
  double beta = 0.5;
  double s_exponent = 4.0;
  int radii_count = 10;

  // mobius
  bool self_test = false;
  unsigned long long seed = 20240811;
  int samples = 1000;

  nlohmann::json to_json() const;
};

int cmd_kernel(const RunConfig& cfg);
int cmd_solve(const RunConfig& cfg);
int cmd_verify(const RunConfig& cfg);
int cmd_asymptotics(const RunConfig& cfg);
int cmd_mobius(const RunConfig& cfg);

}  // namespace talpha::cli
