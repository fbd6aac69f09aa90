#include <cstdint>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nonloc/config.hpp"

int main(int argc, char** argv) {
  CLI::App app{"nonloc: spectral solver and estimate checker for non-local "
               "operators with rough coefficients"};
  app.require_subcommand(1);

  CLI::App* kernel_check = app.add_subcommand(
      "kernel-check", "certify the kernel hypotheses and write "
                      "certificates.json");
  CLI::App* symbol_dump = app.add_subcommand(
      "symbol-dump", "tabulate the operator symbol on the frequency lattice "
                     "as symbol.csv");
  CLI::App* solve = app.add_subcommand(
      "solve", "solve the resolvent equation for each lambda and write grid "
               "files plus solve.json");
  CLI::App* verify = app.add_subcommand(
      "verify", "run estimate-verification ensembles and write per-suite "
                "reports");
  CLI::App* mc = app.add_subcommand(
      "mc", "cross-check the constant-coefficient resolvent against a "
            "Feynman-Kac Monte Carlo estimate");

  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  int grid_n = 0;
  double grid_box = 0.0;
  std::vector<std::string> suites;

  for (CLI::App* sub : {kernel_check, symbol_dump, solve, verify, mc}) {
    sub->add_option("--config", config_path, "run configuration JSON file")
        ->required();
    sub->add_option("--out", out_dir, "output directory (overrides config)");
    sub->add_option("--seed", seed, "base RNG seed (overrides config)");
    sub->add_option("--grid-n", grid_n,
                    "points per axis, power of two (overrides config)");
    sub->add_option("--grid-box", grid_box,
                    "torus side length (overrides config)");
  }
  verify->add_option("--suite", suites,
                     "suite name, repeatable (overrides config list)");

  CLI11_PARSE(app, argc, argv);

  CLI::App* sub = app.get_subcommands().front();
  nonloc::CliOverrides ov;
  if (sub->count("--out")) ov.out = out_dir;
  if (sub->count("--seed")) ov.seed = seed;
  if (sub->count("--grid-n")) ov.grid_n = grid_n;
  if (sub->count("--grid-box")) ov.grid_box = grid_box;
  if (sub->count("--suite")) {
    std::string joined;
    for (const auto& s : suites) {
      if (!joined.empty()) joined += ",";
      joined += s;
    }
    ov.suites = joined;
  }
  return nonloc::run(sub->get_name(), config_path, ov);
}
