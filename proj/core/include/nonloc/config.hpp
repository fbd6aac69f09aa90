#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nonloc/coefficient.hpp"
#include "nonloc/kernel.hpp"
#include "nonloc/operator_spec.hpp"

namespace nonloc {

struct KernelConfig {
  std::string family = "stable";  // stable | subordinate | model | power
  double alpha = 0.5;             // stable exponent, or power p in r^{-d-p}
  std::string phi_family = "stable-sum";
  std::vector<double> phi_alphas = {0.5};
  double phi_beta = 0.0;
};

struct CoefficientConfig {
  std::string family = "one";  // one | constant | signed-halfspace |
                               // indicator-halfspace | cosine-angular | random
  double value = 1.0;
  double base = 1.0;
  double amp = 0.0;
  double nu = 0.5;
  double Lambda = 2.0;
  std::uint64_t seed = 0;
  bool even_inside = false;
  bool even_outside = false;
  bool fully_even = false;
};

struct GridConfig {
  int d = 1;
  int n = 512;
  double box = 64.0;
};

struct SolveConfig {
  std::vector<double> lambdas = {1.0};
  std::vector<double> ps = {2.0};
  std::string variant = "L";
  std::string f_profile = "gaussian-bump";  // named profile or grid file path
  double bump_width = 1.0;
  std::int64_t mc_paths = 100000;
};

struct RunConfig {
  KernelConfig kernel;
  CoefficientConfig coefficient;
  GridConfig grid;
  SolveConfig solve;
  std::vector<std::string> suites;
  std::string out_dir = "out";
  std::uint64_t seed = 7;
};

RunConfig parse_config_json(const std::string& text);
RunConfig parse_config_file(const std::string& path);
std::string serialize_config(const RunConfig& cfg);

RadialJumpKernel kernel_from_config(const KernelConfig& cfg, int d);
CoefficientField coefficient_from_config(const CoefficientConfig& cfg, int d);
OperatorSpec spec_from_config(const RunConfig& cfg);

struct CliOverrides {
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::optional<int> grid_n;
  std::optional<double> grid_box;
  std::optional<std::string> suites;  // comma-separated
};

// Dispatches {kernel-check, symbol-dump, solve, verify, mc}; returns the
// process exit status (0 iff every requested verdict passed).
int run(const std::string& subcommand, const std::string& config_path,
        const CliOverrides& overrides);

}  // namespace nonloc
