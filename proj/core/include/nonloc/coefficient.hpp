#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace nonloc {

// Measurable a(y) with nu <= a <= Lambda.  Symmetry flags are promises kept
// exactly by the constructors, not detected after the fact.  radial_kinks
// lists the radii where a may jump; quadratures align panels with them.
struct CoefficientField {
  std::function<double(const std::vector<double>&)> eval;
  double nu = 1.0;
  double Lambda = 1.0;
  bool even_inside_unit_ball = false;
  bool even_outside_unit_ball = false;
  bool fully_even = false;
  std::uint64_t seed = 0;  // meaningful only for generated fields
  std::string label = "one";
  std::vector<double> radial_kinks;  // sorted, finite
  bool angular_only = false;  // a(y) depends on y/|y| alone

  double operator()(const std::vector<double>& y) const { return eval(y); }
};

CoefficientField coefficient_one();

CoefficientField coefficient_constant(double value);

// a(y) = base + amp * sign(y1); nu = base - |amp|, Lambda = base + |amp|.
CoefficientField coefficient_signed_halfspace(double base, double amp);

// a(y) = base + amp * 1_{y1 > 0}.
CoefficientField coefficient_indicator_halfspace(double base, double amp);

// d = 2 only: a(y) = base + amp * cos(arg y).
CoefficientField coefficient_cosine_angular(double base, double amp);

// Piecewise constant on radial-angular cells.  Radial cell boundaries sit at
// 2^k for k in [radial_lo_exp, radial_hi_exp]; a is constant inside the
// innermost and outside the outermost boundary.  Each shell is cut into
// angular sectors (2 half-lines in d = 1).  Values are drawn uniformly from
// [nu, Lambda] with the given seed.  Symmetry flags force a(y) = a(-y)
// exactly by canonicalizing mirrored sectors on the flagged region.
struct RandomCoefficientOptions {
  double nu = 0.5;
  double Lambda = 2.0;
  int radial_lo_exp = -13;
  int radial_hi_exp = 3;
  int angular_sectors = 8;  // must be even; ignored in d = 1
  bool angular_only = false;
  bool even_inside_unit_ball = false;
  bool even_outside_unit_ball = false;
  bool fully_even = false;
};

CoefficientField coefficient_random(int d, std::uint64_t seed,
                                    const RandomCoefficientOptions& opt = {});

}  // namespace nonloc
