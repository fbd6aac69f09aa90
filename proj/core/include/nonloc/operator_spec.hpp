#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nonloc/coefficient.hpp"
#include "nonloc/kernel.hpp"

namespace nonloc {

enum class ChiRegime { None, UnitBall, Full };  // sigma < 1, = 1, > 1

enum class OperatorVariant { L, LTilde, A, LStar, LTildeStar };

ChiRegime chi_regime_for(double sigma);

std::string variant_name(OperatorVariant v);

// Kernel + coefficient + compensator regime.  The compensator follows sigma
// for variant L and is the unit ball for variant LTilde regardless of sigma.
struct OperatorSpec {
  int d = 1;
  RadialJumpKernel kernel;
  CoefficientField coefficient;
  double sigma = 0.0;
  ChiRegime chi = ChiRegime::None;
  OperatorVariant variant = OperatorVariant::L;

  // K(y) = a(y) j(|y|); adjoint variants evaluate the reflected product.
  double K(const std::vector<double>& y) const;
  bool reflected() const {
    return variant == OperatorVariant::LStar ||
           variant == OperatorVariant::LTildeStar;
  }
  // Compensator indicator for this variant at |y| = r.
  double chi_at(double r) const;
};

OperatorSpec make_spec(int d, RadialJumpKernel kernel,
                       CoefficientField coefficient, double sigma,
                       OperatorVariant variant = OperatorVariant::L);

// K1(z) = min(K(z), K(-z)), K2 = K - K1.  Both evaluate lazily.
struct KernelSplit {
  std::function<double(const std::vector<double>&)> K1;
  std::function<double(const std::vector<double>&)> K2;
};

KernelSplit kernel_split(const OperatorSpec& spec);

struct DriftQuadrature {
  double rel_tol = 1e-12;
  int order = 16;
  int angular_points = 256;  // d = 2 circle rule
};

// b with  L~u = Lu + b . grad u:
//   sigma < 1:  b_i = -integral over |y| < 1 of y_i a(y) J(y)
//   sigma > 1:  b_i = +integral over |y| > 1 of y_i a(y) J(y)
// sigma = 1 is rejected.
std::vector<double> drift_vector(const OperatorSpec& spec,
                                 const DriftQuadrature& quad = {});

}  // namespace nonloc
