#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace nonloc {

// Nondecreasing concave phi on (0, inf).  Catalog families carry analytic
// scaling exponents and, when available, the subordinator density rho with
// mu(dt) = rho(t) dt.
struct BernsteinFunction {
  std::function<double(double)> eval;
  std::string family;         // stable-sum | plus-power | log-up | log-down |
                              // log-cosh | log-sinh | custom
  std::vector<double> alphas; // family parameters (exponent list for stable-sum)
  double beta = 0.0;
  std::optional<double> sigma_hint;       // order of the model kernel r^{-d} phi(r^{-2})
  bool has_subordinator_density = false;
  std::function<double(double)> rho;      // valid only when the flag is set

  double operator()(double lambda) const { return eval(lambda); }
};

BernsteinFunction bernstein_stable_sum(const std::vector<double>& alphas);
BernsteinFunction bernstein_plus_power(double alpha, double beta);
BernsteinFunction bernstein_log_up(double alpha, double beta);
BernsteinFunction bernstein_log_down(double alpha, double beta);
BernsteinFunction bernstein_log_cosh(double alpha);
BernsteinFunction bernstein_log_sinh(double alpha);

enum class KernelFamily { Stable, Subordinate, Model, Custom };

// Radial jump density j(r); J(y) = j(|y|).
struct RadialJumpKernel {
  std::function<double(double)> eval;
  KernelFamily family = KernelFamily::Custom;
  std::optional<double> sigma;  // analytic order when known
  std::optional<double> alpha;  // stable exponent when family == Stable
  std::string label = "custom";

  double operator()(double r) const { return eval(r); }
};

// c(d, alpha) with Psi(e1) = 1 for j(r) = c r^{-d-alpha}.  Computed by the
// split quadrature of the symbol module, cached per (d, alpha).
double stable_normalization(int d, double alpha);

RadialJumpKernel stable_kernel(int d, double alpha);

struct SubordinateQuadrature {
  double rel_tol = 1e-10;
  int order = 16;
};

// j(r) from the heat-kernel average of rho; requires an analytic subordinator
// density on phi (stable-sum family), otherwise throws.
RadialJumpKernel subordinate_kernel(const BernsteinFunction& phi, int d,
                                    const SubordinateQuadrature& quad = {});

// j(r) = r^{-d} phi(r^{-2}); the comparable-kernel realization available for
// every catalog family.
RadialJumpKernel model_kernel(const BernsteinFunction& phi, int d);

RadialJumpKernel custom_kernel(std::function<double(double)> j,
                               std::optional<double> sigma = std::nullopt,
                               std::string label = "custom");

}  // namespace nonloc
