#pragma once

// Shared radial/spherical integrand forms for the symbol and direct-apply
// pathways.  Not installed; internal to the library.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "nonloc/quadrature.hpp"

namespace nonloc::radial {

// Power series; full precision for |x| <= 14.
inline double j0_series(double x) {
  const double m = -0.25 * x * x;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 60; ++k) {
    term *= m / (static_cast<double>(k) * k);
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum) + 1e-300) break;
  }
  return sum;
}

// 1 - J0(x) without cancellation, |x| <= 14.
inline double one_minus_j0_series(double x) {
  const double m = -0.25 * x * x;
  double term = 1.0, sum = 0.0;
  for (int k = 1; k < 60; ++k) {
    term *= m / (static_cast<double>(k) * k);
    sum -= term;
    if (std::abs(term) < 1e-17 * (std::abs(sum) + 1.0)) break;
  }
  return sum;
}

// 2 J1(x)/x - 1 = sum_{k>=1} (-x^2/4)^k / (k!(k+1)!), |x| <= 14.
inline double two_j1_over_x_minus_one(double x) {
  const double m = -0.25 * x * x;
  double term = 1.0, sum = 0.0;
  for (int k = 1; k < 60; ++k) {
    term *= m / (static_cast<double>(k) * (k + 1));
    sum += term;
    if (std::abs(term) < 1e-17 * (std::abs(sum) + 1.0)) break;
  }
  return sum;
}

// Hankel asymptotics for x > 14; relative error below ~1e-9.
inline void j01_asymptotic(double x, double* j0, double* j1) {
  const double ix2 = 1.0 / (x * x);
  const double p0 = 1.0 + ix2 * (-9.0 / 128.0 +
                                 ix2 * (3675.0 / 32768.0 +
                                        ix2 * (-2401245.0 / 4194304.0)));
  const double q0 = (1.0 / x) * (-1.0 / 8.0 +
                                 ix2 * (75.0 / 1024.0 +
                                        ix2 * (-59535.0 / 262144.0)));
  const double p1 = 1.0 + ix2 * (15.0 / 128.0 +
                                 ix2 * (-4725.0 / 32768.0 +
                                        ix2 * (2837835.0 / 4194304.0)));
  const double q1 = (1.0 / x) * (3.0 / 8.0 +
                                 ix2 * (-105.0 / 1024.0 +
                                        ix2 * (72765.0 / 262144.0)));
  const double amp = std::sqrt(2.0 / (M_PI * x));
  const double c0 = std::cos(x - 0.25 * M_PI), s0 = std::sin(x - 0.25 * M_PI);
  const double c1 = std::cos(x - 0.75 * M_PI), s1 = std::sin(x - 0.75 * M_PI);
  if (j0) *j0 = amp * (p0 * c0 - q0 * s0);
  if (j1) *j1 = amp * (p1 * c1 - q1 * s1);
}

inline double bessel_j0(double x) {
  x = std::abs(x);
  if (x <= 14.0) return j0_series(x);
  double v;
  j01_asymptotic(x, &v, nullptr);
  return v;
}

inline double bessel_j1(double x) {
  const double ax = std::abs(x);
  double v;
  if (ax <= 14.0) {
    v = 0.5 * ax * (1.0 + two_j1_over_x_minus_one(ax));
  } else {
    j01_asymptotic(ax, nullptr, &v);
  }
  return x < 0.0 ? -v : v;
}

inline double one_minus_cos(double x) {
  const double s = std::sin(0.5 * x);
  return 2.0 * s * s;
}

inline double sin_minus_x(double x) {
  if (std::abs(x) < 1e-3) {
    const double x2 = x * x;
    return -x * x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0));
  }
  return std::sin(x) - x;
}

// Sphere measure of the unit sphere in R^d (two points for d = 1).
inline double sphere_measure(int d) {
  switch (d) {
    case 1: return 2.0;
    case 2: return 2.0 * M_PI;
    default: return 4.0 * M_PI;
  }
}

// w_d(s) = integral over the unit sphere of (1 - cos(s theta_1)).
inline double one_minus_cos_sphere(int d, double s) {
  s = std::abs(s);
  switch (d) {
    case 1: return 2.0 * one_minus_cos(s);
    case 2:
      if (s <= 14.0) return 2.0 * M_PI * one_minus_j0_series(s);
      return 2.0 * M_PI * (1.0 - bessel_j0(s));
    default:
      if (s < 1e-3) {
        const double s2 = s * s;
        return 4.0 * M_PI * (s2 / 6.0) * (1.0 - s2 / 20.0 * (1.0 - s2 / 42.0));
      }
      return 4.0 * M_PI * (1.0 - std::sin(s) / s);
  }
}

// osc_d(s) = sphere measure - w_d(s); the oscillatory remainder weight.
inline double osc_sphere(int d, double s) {
  s = std::abs(s);
  switch (d) {
    case 1: return 2.0 * std::cos(s);
    case 2: return 2.0 * M_PI * bessel_j0(s);
    default: return s == 0.0 ? 4.0 * M_PI : 4.0 * M_PI * std::sin(s) / s;
  }
}

// Panel count resolving both the phase span and the width of [lo, hi].
inline int piece_panels(double q, double lo, double hi) {
  const double phase = std::abs(q) * (hi - lo);
  const int by_phase = static_cast<int>(std::ceil(phase / 15.0));
  const int by_width = static_cast<int>(std::ceil(1.5 * std::log2(hi / lo)));
  return std::clamp(std::max(by_phase, by_width), 1, 4000);
}

// Sorted boundary radii: coefficient kinks, the compensator radius 1, and
// the phase scale 1/q.
inline std::vector<double> make_boundaries(const std::vector<double>& kinks,
                                           double q) {
  std::vector<double> b = kinks;
  b.push_back(1.0);
  if (q > 1.0) b.push_back(1.0 / q);
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  return b;
}

struct ZonedIntegrand {
  Fn1 f;          // full integrand at radius r for the near/mid zones
  Fn1 mass;       // non-oscillatory completion term in the far zone
  Fn1 osc;        // oscillatory remainder, equal to f - mass past the kinks
  double q = 0.0; // phase rate; half-period pi/q
  bool has_mass = false;
  bool has_osc = false;
};

// Integrates f over (0, inf) with octaves below b0, resolved panels on the
// finite pieces, and mass + alternating remainder beyond the last boundary.
inline double integrate_zoned(const ZonedIntegrand& z,
                              const std::vector<double>& boundaries,
                              double rel_tol) {
  double total = 0.0;
  const double b0 = boundaries.front();
  TailIntegral inner = integrate_octaves_down(z.f, b0, rel_tol);
  if (!inner.converged)
    throw std::runtime_error("radial quadrature: no convergence near zero");
  total += inner.value;
  for (size_t i = 0; i + 1 < boundaries.size(); ++i) {
    const double lo = boundaries[i], hi = boundaries[i + 1];
    total += integrate_segments(z.f, lo, hi, piece_panels(z.q, lo, hi));
  }
  const double bL = boundaries.back();
  if (z.has_mass) {
    TailIntegral m = integrate_octaves_up(z.mass, bL, rel_tol);
    if (!m.converged)
      throw std::runtime_error("radial quadrature: tail mass diverges");
    total += m.value;
  }
  if (z.q > 0.0) {
    Fn1 osc = z.has_osc
                  ? z.osc
                  : Fn1([&](double r) {
                      return z.f(r) - (z.has_mass ? z.mass(r) : 0.0);
                    });
    total += integrate_alternating_tail(osc, bL, M_PI / z.q);
  } else if (!z.has_mass) {
    TailIntegral t = integrate_octaves_up(z.f, bL, rel_tol);
    if (!t.converged)
      throw std::runtime_error("radial quadrature: tail diverges");
    total += t.value;
  }
  return total;
}

// Integral over (lo_open, hi] with jump radii inside: octaves below the first
// cut, phase-resolved panels between consecutive cuts.
inline double integrate_kinked_below(const Fn1& f, double hi, double q,
                                     const std::vector<double>& kinks,
                                     double rel_tol) {
  std::vector<double> cuts;
  for (double k : kinks)
    if (k < hi * (1.0 - 1e-14)) cuts.push_back(k);
  cuts.push_back(hi);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  TailIntegral inner = integrate_octaves_down(f, cuts.front(), rel_tol);
  if (!inner.converged)
    throw std::runtime_error("radial quadrature: no convergence near zero");
  double total = inner.value;
  for (size_t i = 0; i + 1 < cuts.size(); ++i)
    total += integrate_segments(f, cuts[i], cuts[i + 1],
                                piece_panels(q, cuts[i], cuts[i + 1]));
  return total;
}

}  // namespace nonloc::radial
