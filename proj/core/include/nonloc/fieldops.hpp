#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "nonloc/grid.hpp"
#include "nonloc/kernel.hpp"

namespace nonloc {

// (sum |u|^p h^d)^{1/p}; p = infinity gives max |u|.
double lp_norm(const GridFunction& u, double p);

// sum |u(x)| w_R(x) h^d with w_R(x) = 1 / (1/j(R) + 1/j(|x|/2)), w_R(0) = j(R).
double weighted_l1_norm(const GridFunction& u, const RadialJumpKernel& kernel,
                        double R);

struct HolderOptions {
  std::uint64_t seed = 1234;
  std::int64_t sampled_pairs = 100000;
  std::int64_t exhaustive_limit = 2048;  // ball sizes up to this get all pairs
};

// sup |u(x)-u(y)| / |x-y|^alpha over lattice pairs in the ball of radius r
// about center (flat index).  Exhaustive for small balls; sampled pairs plus
// all nearest-neighbor pairs otherwise, so the value is a certified lower
// bound in that regime.
double holder_seminorm(const GridFunction& u, double alpha,
                       std::int64_t center, double radius,
                       const HolderOptions& opt = {});

// Ball averages over lattice radii {h, 2h, 3h, ..., B/2}; balls are clipped
// to the fundamental domain (no wraparound) and averages use exact lattice
// point counts.
double maximal_function(const GridFunction& g, std::int64_t center);
double sharp_function(const GridFunction& g, std::int64_t center);

double ball_average(const GridFunction& g, std::int64_t center, double radius);
double mean_oscillation(const GridFunction& g, std::int64_t center,
                        double radius);
double osc(const GridFunction& g, std::int64_t center, double radius);

struct ConeConvexityReport {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
  double margin = 0.0;  // rhs - lhs
  std::string note;
};

// Double cone C = {|z| < eta1 |b|, |z . b| >= (1 - eta2)|b||z|}.  Checks
//   int_C (|b+2z|^alpha + |b-2z|^alpha - 2|b|^alpha) K(z) dz
//     <= -2^{alpha-3} alpha (1-alpha) int_C |b|^{alpha-2} |z|^2 K(z) dz
// on shared quadrature nodes.  Requires the aperture rule
//   (alpha-2)(1-2 eta1-eta2)^2 + (1+2 eta1)^2 <= (alpha-1)/2.
ConeConvexityReport cone_convexity_check(
    double alpha, const std::vector<double>& b,
    const std::function<double(const std::vector<double>&)>& K, double eta1,
    double eta2, double quad_tol = 1e-6);

bool cone_aperture_admissible(double alpha, double eta1, double eta2);

// Band-limited random field: modes |k|_inf <= n/8 with seeded Gaussian
// coefficients, normalized to unit L2 norm.
GridFunction random_band_limited(const GridSpec& g, std::uint64_t seed,
                                 int max_mode = 0);

// exp(-|x - c|^2 / (2 width^2)), periodized sum over nearest images.
GridFunction gaussian_bump(const GridSpec& g, const std::vector<double>& center,
                           double width, double amplitude = 1.0);

}  // namespace nonloc
