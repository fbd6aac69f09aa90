#pragma once

#include <functional>
#include <vector>

namespace nonloc {

using Fn1 = std::function<double(double)>;

struct GaussRule {
  std::vector<double> x;
  std::vector<double> w;
};

// Nodes/weights on [-1, 1]. Cached per order; reference stays valid.
const GaussRule& gauss_legendre(int order);

// Nodes/weights for the weight e^{-s} on (0, inf).
const GaussRule& gauss_laguerre(int order);

double integrate_panel(const Fn1& f, double a, double b, int order = 16);

// Equal-width segmentation of [a, b] into m panels.
double integrate_segments(const Fn1& f, double a, double b, int m, int order = 16);

struct TailIntegral {
  double value = 0.0;
  bool converged = false;
  double edge = 0.0;        // radius where accumulation stopped
  double last_shell = 0.0;  // final octave contribution
};

// Octave-panel integral of g over [r0, inf), ascending until the octave
// contribution is negligible relative to the accumulated value.
TailIntegral integrate_octaves_up(const Fn1& g, double r0, double rel_tol,
                                  int max_octaves = 1200, int order = 16);

// Octave-panel integral of g over (0, r0], descending toward zero.
TailIntegral integrate_octaves_down(const Fn1& g, double r0, double rel_tol,
                                    int max_octaves = 1200, int order = 16);

// Raw per-octave integrals of g over [r0 * 2^k, r0 * 2^(k+1)), k = 0..n-1
// (direction=+1) or (r0 * 2^-(k+1), r0 * 2^-k] (direction=-1).
// The hypothesis sweeps classify convergence from these sequences.
std::vector<double> octave_shells(const Fn1& g, double r0, int n_octaves,
                                  int direction, int order = 16);

// Tail integral over [a, inf) of an f oscillating with half-period len under
// a smooth decaying envelope: consecutive length-len pieces are integrated
// and the alternating partial sums collapsed by iterated averaging.
double integrate_alternating_tail(const Fn1& f, double a, double len,
                                  int terms = 48, int order = 16);

}  // namespace nonloc
