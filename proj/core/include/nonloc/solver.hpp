#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "nonloc/grid.hpp"
#include "nonloc/symbol.hpp"

namespace nonloc {

struct SolveResult {
  GridFunction u;
  std::string method;  // "resolvent" | "semigroup" | "feynman-kac"
  double residual = 0.0;
  std::map<std::string, double> diagnostics;
};

// hat u = hat f / (m - lambda); residual <= 1e-10 by construction.
SolveResult resolvent_solve(const SymbolTable& table, const GridFunction& f,
                            double lambda);

struct SemigroupOptions {
  int nodes = 96;  // Gauss-Laguerre order, >= 64
};

// u = -int_0^inf e^{-lambda t} F^{-1}(e^{t m} hat f) dt, one Laguerre rule
// per mode with scale lambda + |Re m_k| so every mode integrates a bounded
// smooth factor.
SolveResult semigroup_solve(const SymbolTable& table, const GridFunction& f,
                            double lambda, const SemigroupOptions& opt = {});

struct FeynmanKacOptions {
  std::int64_t paths = 100000;
  std::uint64_t seed = 2024;
};

struct FeynmanKacResult {
  std::vector<double> estimate;       // one per probe point
  std::vector<double> standard_error;
  std::int64_t paths = 0;
  std::uint64_t seed = 0;
};

// u(x) = -(1/lambda) E f(x + X_T), T ~ Exp(lambda), X increments symmetric
// alpha-stable normalized so the exponent is -t |xi|^alpha; alpha = 2 uses
// the Gaussian branch with exponent -t |xi|^2.  d >= 2 samples via the
// (alpha/2)-stable subordinator.  Supported alpha: (0,2].
FeynmanKacResult feynman_kac_mc(
    double alpha, int d, const std::function<double(const std::vector<double>&)>& f,
    double lambda, const std::vector<std::vector<double>>& probes,
    const FeynmanKacOptions& opt = {});

// Draws standard stable deviates (Chambers-Mallows-Stuck form); exposed for
// distribution tests.  Symmetric: E e^{i xi X} = e^{-|xi|^alpha}.  One-sided
// (alpha in (0,1)): E e^{-s X} = e^{-s^alpha}, X > 0.
class StableSampler {
 public:
  StableSampler(double alpha, std::uint64_t seed);
  double draw_symmetric();
  double draw_one_sided();

 private:
  double alpha_;
  std::mt19937_64 rng_;
  double uniform();
};

}  // namespace nonloc
