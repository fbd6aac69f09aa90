#include "nonloc/fieldops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "nonloc/quadrature.hpp"

namespace nonloc {

double lp_norm(const GridFunction& u, double p) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : u.values) m = std::max(m, std::abs(v));
    return m;
  }
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
  const double hd = std::pow(u.grid.h(), u.grid.d);
  double s = 0.0;
  for (double v : u.values) s += std::pow(std::abs(v), p);
  return std::pow(s * hd, 1.0 / p);
}

double weighted_l1_norm(const GridFunction& u, const RadialJumpKernel& kernel,
                        double R) {
  if (!(R > 0.0)) throw std::invalid_argument("weighted_l1_norm: R must be > 0");
  const double jR = kernel(R);
  if (!(jR > 0.0))
    throw std::runtime_error("weighted_l1_norm: kernel vanishes at R");
  const double hd = std::pow(u.grid.h(), u.grid.d);
  double s = 0.0;
  for (std::int64_t i = 0; i < u.grid.size(); ++i) {
    const std::vector<double> x = u.grid.point(i);
    double r = 0.0;
    for (double c : x) r += c * c;
    r = std::sqrt(r);
    double w;
    if (r == 0.0) {
      w = jR;
    } else {
      const double jh = kernel(0.5 * r);
      w = jh > 0.0 ? 1.0 / (1.0 / jR + 1.0 / jh) : 0.0;
    }
    s += std::abs(u[i]) * w;
  }
  return s * hd;
}

namespace {

// lattice indices inside the Euclidean ball of the given radius about the
// center point; no periodic wraparound
std::vector<std::int64_t> ball_indices(const GridSpec& g, std::int64_t center,
                                       double radius) {
  const std::vector<double> c = g.point(center);
  const double r2 = radius * radius * (1.0 + 1e-12);
  std::vector<std::int64_t> out;
  const int reach = static_cast<int>(std::floor(radius / g.h())) + 1;
  int cidx[3];
  g.unflatten(center, cidx);
  int idx[3] = {0, 0, 0};
  std::function<void(int)> rec = [&](int axis) {
    if (axis == g.d) {
      const std::int64_t flat = g.flatten(idx);
      const std::vector<double> x = g.point(flat);
      double d2 = 0.0;
      for (int a = 0; a < g.d; ++a) d2 += (x[a] - c[a]) * (x[a] - c[a]);
      if (d2 <= r2) out.push_back(flat);
      return;
    }
    for (int o = -reach; o <= reach; ++o) {
      const int j = cidx[axis] + o;
      if (j < 0 || j >= g.n) continue;  // clipped at the domain edge
      idx[axis] = j;
      rec(axis + 1);
    }
  };
  rec(0);
  return out;
}

}  // namespace

double ball_average(const GridFunction& g, std::int64_t center, double radius) {
  const std::vector<std::int64_t> pts = ball_indices(g.grid, center, radius);
  if (pts.empty()) throw std::runtime_error("ball_average: empty ball");
  double s = 0.0;
  for (std::int64_t i : pts) s += g[i];
  return s / static_cast<double>(pts.size());
}

double mean_oscillation(const GridFunction& g, std::int64_t center,
                        double radius) {
  const std::vector<std::int64_t> pts = ball_indices(g.grid, center, radius);
  if (pts.empty()) throw std::runtime_error("mean_oscillation: empty ball");
  double avg = 0.0;
  for (std::int64_t i : pts) avg += g[i];
  avg /= static_cast<double>(pts.size());
  double s = 0.0;
  for (std::int64_t i : pts) s += std::abs(g[i] - avg);
  return s / static_cast<double>(pts.size());
}

double osc(const GridFunction& g, std::int64_t center, double radius) {
  const std::vector<std::int64_t> pts = ball_indices(g.grid, center, radius);
  if (pts.empty()) throw std::runtime_error("osc: empty ball");
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (std::int64_t i : pts) {
    lo = std::min(lo, g[i]);
    hi = std::max(hi, g[i]);
  }
  return hi - lo;
}

double maximal_function(const GridFunction& g, std::int64_t center) {
  const GridSpec& gs = g.grid;
  double best = std::abs(g[center]);
  if (gs.d == 1) {
    // prefix sums give every lattice ball in O(n)
    const std::int64_t n = gs.n;
    std::vector<double> pre(n + 1, 0.0);
    for (std::int64_t j = 0; j < n; ++j) pre[j + 1] = pre[j] + std::abs(g[j]);
    const std::int64_t c = center;
    const std::int64_t kmax = gs.n / 2;
    for (std::int64_t k = 1; k <= kmax; ++k) {
      const std::int64_t lo = std::max<std::int64_t>(0, c - k);
      const std::int64_t hi = std::min<std::int64_t>(n - 1, c + k);
      const double avg = (pre[hi + 1] - pre[lo]) / static_cast<double>(hi - lo + 1);
      best = std::max(best, avg);
    }
    return best;
  }
  GridFunction abs_g{gs, std::vector<double>(g.values.size())};
  for (size_t i = 0; i < g.values.size(); ++i)
    abs_g.values[i] = std::abs(g.values[i]);
  for (int k = 1; k <= gs.n / 2; ++k)
    best = std::max(best, ball_average(abs_g, center, k * gs.h()));
  return best;
}

double sharp_function(const GridFunction& g, std::int64_t center) {
  const GridSpec& gs = g.grid;
  double best = 0.0;
  for (int k = 1; k <= gs.n / 2; ++k)
    best = std::max(best, mean_oscillation(g, center, k * gs.h()));
  return best;
}

double holder_seminorm(const GridFunction& u, double alpha, std::int64_t center,
                       double radius, const HolderOptions& opt) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::invalid_argument("holder_seminorm: alpha must lie in (0,1]");
  const GridSpec& g = u.grid;
  const std::vector<std::int64_t> pts = ball_indices(g, center, radius);
  if (pts.size() < 2)
    throw std::runtime_error("holder_seminorm: ball has fewer than two points");
  auto ratio = [&](std::int64_t i, std::int64_t j) {
    const std::vector<double> xi = g.point(i), xj = g.point(j);
    double d2 = 0.0;
    for (int a = 0; a < g.d; ++a) d2 += (xi[a] - xj[a]) * (xi[a] - xj[a]);
    if (d2 == 0.0) return 0.0;
    return std::abs(u[i] - u[j]) / std::pow(std::sqrt(d2), alpha);
  };
  double best = 0.0;
  const std::int64_t m = static_cast<std::int64_t>(pts.size());
  if (m <= opt.exhaustive_limit) {
    for (std::int64_t a = 0; a < m; ++a)
      for (std::int64_t b = a + 1; b < m; ++b)
        best = std::max(best, ratio(pts[a], pts[b]));
    return best;
  }
  // sampled pairs plus all axis-neighbor pairs; a certified lower bound
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<std::int64_t> pick(0, m - 1);
  for (std::int64_t t = 0; t < opt.sampled_pairs; ++t)
    best = std::max(best, ratio(pts[pick(rng)], pts[pick(rng)]));
  int idx[3];
  for (std::int64_t a = 0; a < m; ++a) {
    g.unflatten(pts[a], idx);
    for (int ax = 0; ax < g.d; ++ax) {
      if (idx[ax] + 1 >= g.n) continue;
      idx[ax] += 1;
      best = std::max(best, ratio(pts[a], g.flatten(idx)));
      idx[ax] -= 1;
    }
  }
  return best;
}

bool cone_aperture_admissible(double alpha, double eta1, double eta2) {
  if (!(alpha > 0.0 && alpha < 1.0)) return false;
  if (!(eta1 > 0.0 && eta1 < 0.5 && eta2 > 0.0 && eta2 < 1.0)) return false;
  const double lhs = (alpha - 2.0) * std::pow(1.0 - 2.0 * eta1 - eta2, 2) +
                     std::pow(1.0 + 2.0 * eta1, 2);
  return lhs <= 0.5 * (alpha - 1.0);
}

ConeConvexityReport cone_convexity_check(
    double alpha, const std::vector<double>& b,
    const std::function<double(const std::vector<double>&)>& K, double eta1,
    double eta2, double quad_tol) {
  ConeConvexityReport rep;
  const int d = static_cast<int>(b.size());
  if (d < 1 || d > 3)
    throw std::invalid_argument("cone check: b must have 1 to 3 components");
  double bn = 0.0;
  for (double c : b) bn += c * c;
  bn = std::sqrt(bn);
  if (!(bn > 0.0)) throw std::invalid_argument("cone check: b must be nonzero");
  if (!cone_aperture_admissible(alpha, eta1, eta2)) {
    rep.note = "aperture rule violated; check not applicable";
    return rep;
  }
  const double rmax = eta1 * bn;
  const double gamma = std::acos(1.0 - eta2);
  const double balpha = std::pow(bn, alpha);

  // integrand pair on a shared node z: {convexity defect, |z|^2} * K
  auto defect = [&](const std::vector<double>& z, double r) {
    std::vector<double> zp(d), zm(d);
    for (int a = 0; a < d; ++a) {
      zp[a] = b[a] + 2.0 * z[a];
      zm[a] = b[a] - 2.0 * z[a];
    }
    double np = 0.0, nm = 0.0;
    for (int a = 0; a < d; ++a) {
      np += zp[a] * zp[a];
      nm += zm[a] * zm[a];
    }
    const double g =
        std::pow(np, 0.5 * alpha) + std::pow(nm, 0.5 * alpha) - 2.0 * balpha;
    const double k = K(z);
    return std::pair<double, double>{g * k, r * r * k};
  };

  double lhs = 0.0, rhs_mass = 0.0;
  if (d == 1) {
    // the angular condition is vacuous; the cone is the punctured interval
    auto f = [&](double r) {
      const auto a1 = defect({r}, r);
      const auto a2 = defect({-r}, r);
      return std::pair<double, double>{a1.first + a2.first,
                                       a1.second + a2.second};
    };
    TailIntegral t1 = integrate_octaves_down(
        [&](double r) { return f(r).first; }, rmax, quad_tol);
    TailIntegral t2 = integrate_octaves_down(
        [&](double r) { return f(r).second; }, rmax, quad_tol);
    if (!t1.converged || !t2.converged)
      throw std::runtime_error("cone check: radial quadrature diverged");
    lhs = t1.value;
    rhs_mass = t2.value;
  } else {
    // orthonormal frame with e0 = b / |b|
    std::vector<std::vector<double>> frame(d, std::vector<double>(d, 0.0));
    for (int a = 0; a < d; ++a) frame[0][a] = b[a] / bn;
    {
      int pivot = 0;
      for (int a = 1; a < d; ++a)
        if (std::abs(frame[0][a]) < std::abs(frame[0][pivot])) pivot = a;
      frame[1][pivot] = 1.0;
      double dot = frame[0][pivot];
      for (int a = 0; a < d; ++a) frame[1][a] -= dot * frame[0][a];
      double nn = 0.0;
      for (int a = 0; a < d; ++a) nn += frame[1][a] * frame[1][a];
      nn = std::sqrt(nn);
      for (int a = 0; a < d; ++a) frame[1][a] /= nn;
      if (d == 3) {
        frame[2][0] = frame[0][1] * frame[1][2] - frame[0][2] * frame[1][1];
        frame[2][1] = frame[0][2] * frame[1][0] - frame[0][0] * frame[1][2];
        frame[2][2] = frame[0][0] * frame[1][1] - frame[0][1] * frame[1][0];
      }
    }
    auto at_angles = [&](double r, double theta, double phi, int sign) {
      std::vector<double> z(d);
      const double c0 = sign * std::cos(theta);
      if (d == 2) {
        const double s0 = std::sin(theta);
        for (int a = 0; a < d; ++a)
          z[a] = r * (c0 * frame[0][a] + s0 * frame[1][a]);
      } else {
        const double s0 = std::sin(theta);
        for (int a = 0; a < d; ++a)
          z[a] = r * (c0 * frame[0][a] +
                      s0 * (std::cos(phi) * frame[1][a] +
                            std::sin(phi) * frame[2][a]));
      }
      return defect(z, r);
    };
    const GaussRule& gl = gauss_legendre(16);
    auto angular = [&](double r) {
      double g_sum = 0.0, m_sum = 0.0;
      if (d == 2) {
        // theta over (-gamma, gamma), both caps
        for (size_t i = 0; i < gl.x.size(); ++i) {
          const double th = gamma * gl.x[i];
          const double w = gamma * gl.w[i];
          for (int sign : {+1, -1}) {
            const auto v = at_angles(r, th, 0.0, sign);
            g_sum += w * v.first;
            m_sum += w * v.second;
          }
        }
      } else {
        // polar over (0, gamma) with sin(theta) measure, azimuth trapezoid
        const int nphi = 32;
        for (size_t i = 0; i < gl.x.size(); ++i) {
          const double th = 0.5 * gamma * (gl.x[i] + 1.0);
          const double w = 0.5 * gamma * gl.w[i] * std::sin(th);
          for (int p = 0; p < nphi; ++p) {
            const double phi = 2.0 * M_PI * p / nphi;
            const double wp = 2.0 * M_PI / nphi;
            for (int sign : {+1, -1}) {
              const auto v = at_angles(r, th, phi, sign);
              g_sum += w * wp * v.first;
              m_sum += w * wp * v.second;
            }
          }
        }
      }
      const double jac = d == 2 ? r : r * r;
      return std::pair<double, double>{g_sum * jac, m_sum * jac};
    };
    TailIntegral t1 = integrate_octaves_down(
        [&](double r) { return angular(r).first; }, rmax, quad_tol);
    TailIntegral t2 = integrate_octaves_down(
        [&](double r) { return angular(r).second; }, rmax, quad_tol);
    if (!t1.converged || !t2.converged)
      throw std::runtime_error("cone check: radial quadrature diverged");
    lhs = t1.value;
    rhs_mass = t2.value;
  }

  rep.lhs = lhs;
  rep.rhs = -std::pow(2.0, alpha - 3.0) * alpha * (1.0 - alpha) *
            std::pow(bn, alpha - 2.0) * rhs_mass;
  rep.margin = rep.rhs - rep.lhs;
  rep.holds = rep.lhs <= rep.rhs;
  rep.note = "shared-node cone quadrature";
  return rep;
}

GridFunction random_band_limited(const GridSpec& g, std::uint64_t seed,
                                 int max_mode) {
  validate(g);
  if (max_mode <= 0) max_mode = g.n / 8;
  if (max_mode >= g.n / 2)
    throw std::invalid_argument("random_band_limited: band exceeds Nyquist");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Spectrum s(g.size(), {0.0, 0.0});
  int idx[3];
  for (std::int64_t i = 0; i < g.size(); ++i) {
    const double re = gauss(rng), im = gauss(rng);
    g.unflatten(i, idx);
    bool in_band = true;
    for (int a = 0; a < g.d; ++a)
      if (std::abs(g.freq_index(idx[a])) > max_mode) in_band = false;
    if (in_band) s[i] = {re, im};
  }
  // Hermitian symmetrization makes the field real
  int midx[3];
  for (std::int64_t i = 0; i < g.size(); ++i) {
    g.unflatten(i, idx);
    bool self = true;
    for (int a = 0; a < g.d; ++a) {
      midx[a] = idx[a] == 0 ? 0 : g.n - idx[a];
      if (midx[a] != idx[a]) self = false;
    }
    if (self) {
      s[i] = {s[i].real(), 0.0};
    } else {
      const std::int64_t mi = g.flatten(midx);
      if (mi > i) s[mi] = std::conj(s[i]);
    }
  }
  GridFunction u = idft(s, g);
  const double nrm = lp_norm(u, 2.0);
  if (!(nrm > 0.0)) throw std::runtime_error("random_band_limited: zero field");
  for (double& v : u.values) v /= nrm;
  return u;
}

GridFunction gaussian_bump(const GridSpec& g, const std::vector<double>& center,
                           double width, double amplitude) {
  validate(g);
  if (static_cast<int>(center.size()) != g.d)
    throw std::invalid_argument("gaussian_bump: center size must equal d");
  if (!(width > 0.0)) throw std::invalid_argument("gaussian_bump: width <= 0");
  GridFunction u = zeros(g);
  const double inv = 1.0 / (2.0 * width * width);
  for (std::int64_t i = 0; i < g.size(); ++i) {
    const std::vector<double> x = g.point(i);
    double val = 0.0;
    // nearest periodic images per axis; adequate for width << box
    const int images = 1;
    std::function<double(int, double)> rec = [&](int axis, double acc) {
      if (axis == g.d) return std::exp(-acc * inv);
      double out = 0.0;
      for (int m = -images; m <= images; ++m) {
        const double dxa = x[axis] + m * g.box - center[axis];
        out += rec(axis + 1, acc + dxa * dxa);
      }
      return out;
    };
    val = rec(0, 0.0);
    u[i] = amplitude * val;
  }
  return u;
}

}  // namespace nonloc
