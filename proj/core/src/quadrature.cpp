#include "nonloc/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace nonloc {

namespace {

GaussRule make_gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
  GaussRule r;
  r.x.resize(n);
  r.w.resize(n);
  const double eps = 1e-15;
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Chebyshev-based initial guess, then Newton on P_n.
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      double z1 = z;
      z = z1 - p0 / pp;
      if (std::abs(z - z1) < eps) break;
    }
    r.x[i] = -z;
    r.x[n - 1 - i] = z;
    r.w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    r.w[n - 1 - i] = r.w[i];
  }
  return r;
}

GaussRule make_gauss_laguerre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_laguerre: order must be >= 1");
  GaussRule r;
  r.x.resize(n);
  r.w.resize(n);
  double z = 0.0;
  for (int i = 0; i < n; ++i) {
    if (i == 0) {
      z = 3.0 / (1.0 + 2.4 * n);
    } else if (i == 1) {
      z += 15.0 / (1.0 + 2.5 * n);
    } else {
      double ai = i - 1;
      z += ((1.0 + 2.55 * ai) / (1.9 * ai)) * (z - r.x[i - 2]);
    }
    long double pp = 0.0L;
    for (int it = 0; it < 200; ++it) {
      long double p0 = 1.0L, p1 = 0.0L;
      for (int j = 0; j < n; ++j) {
        long double p2 = p1;
        p1 = p0;
        p0 = ((2.0L * j + 1.0L - z) * p1 - j * p2) / (j + 1.0L);
      }
      pp = (n * p0 - n * p1) / z;
      double z1 = z;
      z = z1 - static_cast<double>(p0 / pp);
      if (std::abs(z - z1) < 1e-14 * std::max(1.0, z)) break;
    }
    r.x[i] = z;
    long double p1 = 0.0L, p0 = 1.0L;
    for (int j = 0; j < n; ++j) {
      long double p2 = p1;
      p1 = p0;
      p0 = ((2.0L * j + 1.0L - z) * p1 - j * p2) / (j + 1.0L);
    }
    // weight via L_{n}' relation; p1 holds L_{n-1}(z)
    r.w[i] = static_cast<double>(z / (n * n * p1 * p1));
  }
  return r;
}

std::map<int, GaussRule> g_legendre_cache;
std::map<int, GaussRule> g_laguerre_cache;
std::mutex g_cache_mutex;

}  // namespace

const GaussRule& gauss_legendre(int order) {
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  auto it = g_legendre_cache.find(order);
  if (it == g_legendre_cache.end())
    it = g_legendre_cache.emplace(order, make_gauss_legendre(order)).first;
  return it->second;
}

const GaussRule& gauss_laguerre(int order) {
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  auto it = g_laguerre_cache.find(order);
  if (it == g_laguerre_cache.end())
    it = g_laguerre_cache.emplace(order, make_gauss_laguerre(order)).first;
  return it->second;
}

double integrate_panel(const Fn1& f, double a, double b, int order) {
  const GaussRule& g = gauss_legendre(order);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double acc = 0.0;
  for (size_t i = 0; i < g.x.size(); ++i) acc += g.w[i] * f(mid + half * g.x[i]);
  return acc * half;
}

double integrate_segments(const Fn1& f, double a, double b, int m, int order) {
  if (m < 1) throw std::invalid_argument("integrate_segments: m >= 1");
  double acc = 0.0;
  const double step = (b - a) / m;
  for (int k = 0; k < m; ++k)
    acc += integrate_panel(f, a + k * step, a + (k + 1) * step, order);
  return acc;
}

TailIntegral integrate_octaves_up(const Fn1& g, double r0, double rel_tol,
                                  int max_octaves, int order) {
  TailIntegral out;
  double lo = r0;
  int quiet = 0;
  for (int k = 0; k < max_octaves; ++k) {
    const double hi = lo * 2.0;
    const double shell = integrate_panel(g, lo, hi, order);
    out.value += shell;
    out.last_shell = shell;
    lo = hi;
    if (!std::isfinite(shell) || !std::isfinite(out.value)) {
      out.converged = false;
      break;
    }
    if (std::abs(shell) <= rel_tol * (std::abs(out.value) + 1e-300)) {
      if (++quiet >= 2) {
        out.converged = true;
        break;
      }
    } else {
      quiet = 0;
    }
  }
  out.edge = lo;
  return out;
}

TailIntegral integrate_octaves_down(const Fn1& g, double r0, double rel_tol,
                                    int max_octaves, int order) {
  TailIntegral out;
  double hi = r0;
  int quiet = 0;
  for (int k = 0; k < max_octaves; ++k) {
    const double lo = hi * 0.5;
    const double shell = integrate_panel(g, lo, hi, order);
    out.value += shell;
    out.last_shell = shell;
    hi = lo;
    if (!std::isfinite(shell) || !std::isfinite(out.value)) {
      out.converged = false;
      break;
    }
    if (std::abs(shell) <= rel_tol * (std::abs(out.value) + 1e-300)) {
      if (++quiet >= 2) {
        out.converged = true;
        break;
      }
    } else {
      quiet = 0;
    }
    if (hi < 1e-280) break;
  }
  out.edge = hi;
  return out;
}

double integrate_alternating_tail(const Fn1& f, double a, double len,
                                  int terms, int order) {
  if (!(a > 0.0) || !(len > 0.0))
    throw std::invalid_argument("alternating tail needs a > 0, len > 0");
  std::vector<double> s;
  s.reserve(terms);
  double acc = 0.0;
  double lo = a;
  for (int k = 0; k < terms; ++k) {
    const double hi = lo + len;
    // wide pieces relative to lo get log-resolved sub-panels
    const int m = std::max(1, static_cast<int>(
                                  std::ceil(2.0 * std::log2(hi / lo))));
    acc += integrate_segments(f, lo, hi, m, order);
    s.push_back(acc);
    lo = hi;
  }
  for (size_t w = s.size() - 1; w >= 1; --w)
    for (size_t k = 0; k < w; ++k) s[k] = 0.5 * (s[k] + s[k + 1]);
  return s[0];
}

std::vector<double> octave_shells(const Fn1& g, double r0, int n_octaves,
                                  int direction, int order) {
  std::vector<double> shells;
  shells.reserve(n_octaves);
  double edge = r0;
  for (int k = 0; k < n_octaves; ++k) {
    double lo, hi;
    if (direction >= 0) {
      lo = edge;
      hi = edge * 2.0;
      edge = hi;
    } else {
      hi = edge;
      lo = edge * 0.5;
      edge = lo;
    }
    shells.push_back(integrate_panel(g, lo, hi, order));
  }
  return shells;
}

}  // namespace nonloc
