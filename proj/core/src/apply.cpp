#include "nonloc/apply.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "nonloc/quadrature.hpp"
#include "radial_forms.hpp"

namespace nonloc {

namespace {

using namespace nonloc::radial;
using cd = std::complex<double>;

bool coefficient_is_constant(const CoefficientField& a) {
  return a.nu == a.Lambda;
}

// chi_at() overrides the sigma-derived regime for the L-tilde variants, so
// zone decisions must go through the variant-aware regime, never spec.chi.
ChiRegime effective_chi(const OperatorSpec& spec) {
  if (spec.variant == OperatorVariant::LTilde ||
      spec.variant == OperatorVariant::LTildeStar)
    return ChiRegime::UnitBall;
  return spec.chi;
}

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

cd ipow(int p) {
  switch (p & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

// Cut radii covering [lo, hi]: endpoints, coefficient jumps, and the
// compensator radius when the indicator switches inside the range.
std::vector<double> zone_cuts(const OperatorSpec& spec, double lo, double hi) {
  std::vector<double> cuts{lo, hi};
  for (double k : spec.coefficient.radial_kinks)
    if (k > lo * (1.0 + 1e-14) && k < hi * (1.0 - 1e-14)) cuts.push_back(k);
  if (effective_chi(spec) == ChiRegime::UnitBall && 1.0 > lo * (1.0 + 1e-14) &&
      1.0 < hi * (1.0 - 1e-14))
    cuts.push_back(1.0);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  return cuts;
}

// ---------------------------------------------------------------- zone a ---

// Inner-zone moment: acting on a trigonometric interpolant, the truncated
// Taylor expansion of e^{i xi.y} - 1 - i xi.y chi turns the |y| < delta
// integral into a polynomial in i xi with moment coefficients.
struct MomentTerm {
  int p[3] = {0, 0, 0};
  int deg = 0;
  double coeff = 0.0;  // M_p / p!
};

struct SphereRule {
  std::vector<std::array<double, 3>> dir;
  std::vector<double> w;
};

SphereRule sphere_rule(int d, int angular_points) {
  SphereRule s;
  if (d == 2) {
    const int na = std::max(8, angular_points);
    for (int i = 0; i < na; ++i) {
      const double phi = 2.0 * M_PI * (i + 0.5) / na;
      s.dir.push_back({std::cos(phi), std::sin(phi), 0.0});
      s.w.push_back(2.0 * M_PI / na);
    }
  } else {
    const GaussRule& gl = gauss_legendre(16);  // polar cosine on [-1, 1]
    const int na = 32;
    for (size_t ip = 0; ip < gl.x.size(); ++ip) {
      const double c = gl.x[ip];
      const double st = std::sqrt(std::max(0.0, 1.0 - c * c));
      for (int ia = 0; ia < na; ++ia) {
        const double phi = 2.0 * M_PI * (ia + 0.5) / na;
        s.dir.push_back({st * std::cos(phi), st * std::sin(phi), c});
        s.w.push_back(gl.w[ip] * 2.0 * M_PI / na);
      }
    }
  }
  return s;
}

std::vector<MomentTerm> moment_terms(int d, int lowest) {
  std::vector<MomentTerm> out;
  const int t1 = d >= 2 ? 4 : 0, t2 = d >= 3 ? 4 : 0;
  for (int p0 = 0; p0 <= 4; ++p0)
    for (int p1 = 0; p1 <= t1; ++p1)
      for (int p2 = 0; p2 <= t2; ++p2) {
        const int deg = p0 + p1 + p2;
        if (deg < lowest || deg > 4) continue;
        MomentTerm m;
        m.p[0] = p0;
        m.p[1] = p1;
        m.p[2] = p2;
        m.deg = deg;
        out.push_back(m);
      }
  return out;
}

cd inner_value(const std::vector<MomentTerm>& terms, const double* xi) {
  cd acc{0.0, 0.0};
  for (const MomentTerm& t : terms) {
    double mono = t.coeff;
    for (int a = 0; a < 3; ++a)
      for (int i = 0; i < t.p[a]; ++i) mono *= xi[a];
    acc += ipow(t.deg) * mono;
  }
  return acc;
}

// ------------------------------------------------------------- transfer ----

struct Transfer {
  std::vector<cd> H;
  double abs_moment5 = 0.0;  // int_{|y| < delta} |y|^5 |K|
};

std::map<std::string, Transfer> g_transfer_cache;
std::mutex g_transfer_mutex;

struct BuildContext {
  const OperatorSpec& spec;
  const GridSpec& grid;
  const ApplyOptions& opt;
  double delta;
  double far_start;            // B/4
  double far_end;              // last cut; analytic tails beyond
  std::vector<double> cuts;    // delta .. far_end
  bool odd_vanishes;
};

void build_inner(const BuildContext& c, std::vector<MomentTerm>* terms,
                 double* abs5) {
  const OperatorSpec& spec = c.spec;
  const int d = spec.d;
  const int m0 = effective_chi(spec) == ChiRegime::None ? 1 : 2;
  const auto& kinks = spec.coefficient.radial_kinks;
  const double tol = c.opt.tail_rel_tol;
  *terms = moment_terms(d, m0);

  if (d == 1) {
    std::vector<double> buf(1);
    auto K = [&](double y) {
      buf[0] = y;
      return spec.K(buf);
    };
    for (MomentTerm& t : *terms) {
      const int p = t.deg;
      const double sgn = p % 2 == 0 ? 1.0 : -1.0;
      Fn1 f = [&, p, sgn](double r) {
        double mono = 1.0;
        for (int i = 0; i < p; ++i) mono *= r;
        return mono * (K(r) + sgn * K(-r));
      };
      t.coeff = integrate_kinked_below(f, c.delta, 0.0, kinks, tol) /
                factorial(p);
    }
    Fn1 f5 = [&](double r) {
      const double r5 = r * r * r * r * r;
      return r5 * (std::abs(K(r)) + std::abs(K(-r)));
    };
    *abs5 = integrate_kinked_below(f5, c.delta, 0.0, kinks, tol);
    return;
  }

  const SphereRule S = sphere_rule(d, c.opt.angular_points);
  auto j = spec.kernel.eval;
  if (coefficient_is_constant(spec.coefficient)) {
    const double cval = spec.coefficient(std::vector<double>(d, 1.0));
    std::array<double, 5> radial{};  // indexed by degree - 1
    for (int deg = m0; deg <= 4; ++deg) {
      Fn1 f = [&, deg](double r) {
        double mono = 1.0;
        for (int i = 0; i < deg + d - 1; ++i) mono *= r;
        return mono * j(r);
      };
      radial[deg - 1] = integrate_kinked_below(f, c.delta, 0.0, kinks, tol);
    }
    for (MomentTerm& t : *terms) {
      double sm = 0.0;
      for (size_t i = 0; i < S.dir.size(); ++i) {
        double mono = S.w[i];
        for (int a = 0; a < 3; ++a)
          for (int k = 0; k < t.p[a]; ++k) mono *= S.dir[i][a];
        sm += mono;
      }
      t.coeff = cval * sm * radial[t.deg - 1] / factorial(t.p[0]) /
                factorial(t.p[1]) / factorial(t.p[2]);
    }
  } else {
    std::vector<double> buf(d);
    for (MomentTerm& t : *terms) {
      Fn1 f = [&, t](double r) {
        double ang = 0.0;
        for (size_t i = 0; i < S.dir.size(); ++i) {
          double mono = S.w[i];
          for (int a = 0; a < d; ++a) {
            buf[a] = r * S.dir[i][a];
            for (int k = 0; k < t.p[a]; ++k) mono *= S.dir[i][a];
          }
          ang += mono * spec.K(buf);
        }
        double rp = 1.0;
        for (int i = 0; i < t.deg + d - 1; ++i) rp *= r;
        return ang * rp;
      };
      t.coeff = integrate_kinked_below(f, c.delta, 0.0, kinks, tol) /
                factorial(t.p[0]) / factorial(t.p[1]) / factorial(t.p[2]);
    }
  }
  const double asup =
      std::max(std::abs(spec.coefficient.nu), std::abs(spec.coefficient.Lambda));
  Fn1 f5 = [&](double r) {
    double rp = 1.0;
    for (int i = 0; i < 4 + d; ++i) rp *= r;
    return rp * std::abs(j(r));
  };
  *abs5 = asup * sphere_measure(d) *
          integrate_kinked_below(f5, c.delta, 0.0, kinks, tol);
}

// ------------------------------------------------------------- d = 1 -------

struct AxisNode {
  double r, w, sumK, difK, chi;
};

std::vector<AxisNode> axis_nodes(const BuildContext& c) {
  const double xi_max = M_PI * c.grid.n / c.grid.box;
  const GaussRule& gl = gauss_legendre(c.opt.order);
  std::vector<AxisNode> out;
  std::vector<double> buf(1);
  for (size_t i = 0; i + 1 < c.cuts.size(); ++i) {
    const double lo = c.cuts[i], hi = c.cuts[i + 1];
    const int m = piece_panels(xi_max, lo, hi);
    const double width = (hi - lo) / m;
    for (int seg = 0; seg < m; ++seg) {
      const double a = lo + seg * width;
      for (size_t t = 0; t < gl.x.size(); ++t) {
        AxisNode nd;
        nd.r = a + 0.5 * width * (gl.x[t] + 1.0);
        nd.w = 0.5 * width * gl.w[t];
        buf[0] = nd.r;
        const double kp = c.spec.K(buf);
        buf[0] = -nd.r;
        const double km = c.spec.K(buf);
        nd.sumK = kp + km;
        nd.difK = kp - km;
        nd.chi = c.spec.chi_at(nd.r);
        out.push_back(nd);
      }
    }
  }
  return out;
}

void build_1d(const BuildContext& c, const std::vector<MomentTerm>& terms,
              Transfer* T) {
  const GridSpec& g = c.grid;
  const std::vector<AxisNode> nodes = axis_nodes(c);
  std::vector<double> buf(1);
  auto sumK = [&](double r) {
    buf[0] = r;
    const double kp = c.spec.K(buf);
    buf[0] = -r;
    return kp + c.spec.K(buf);
  };
  auto difK = [&](double r) {
    buf[0] = r;
    const double kp = c.spec.K(buf);
    buf[0] = -r;
    return kp - c.spec.K(buf);
  };
  const double bL = c.far_end;
  TailIntegral mass = integrate_octaves_up(sumK, bL, c.opt.tail_rel_tol);
  if (!mass.converged)
    throw std::runtime_error("direct apply: kernel tail mass diverges");
  double grad_far = 0.0;
  if (!c.odd_vanishes && effective_chi(c.spec) == ChiRegime::Full) {
    TailIntegral gm = integrate_octaves_up(
        [&](double r) { return r * difK(r); }, bL, c.opt.tail_rel_tol);
    if (!gm.converged)
      throw std::runtime_error("direct apply: tail gradient moment diverges");
    grad_far = gm.value;
  }

  const int n = g.n;
  for (int k = 0; k <= n / 2; ++k) {
    if (k == 0) {
      T->H[0] = 0.0;
      continue;
    }
    const double q = g.xi_of(k);
    double xi3[3] = {q, 0.0, 0.0};
    cd v = inner_value(terms, xi3);
    double re = 0.0, im = 0.0;
    for (const AxisNode& nd : nodes) {
      const double s = q * nd.r;
      re -= nd.w * nd.sumK * one_minus_cos(s);
      if (!c.odd_vanishes)
        im += nd.w * nd.difK *
              (nd.chi > 0.0 ? sin_minus_x(s) : std::sin(s));
    }
    re -= mass.value;
    re += integrate_alternating_tail(
        [&](double r) { return sumK(r) * std::cos(q * r); }, bL, M_PI / q, 48,
        c.opt.order);
    if (!c.odd_vanishes) {
      im += integrate_alternating_tail(
          [&](double r) { return difK(r) * std::sin(q * r); }, bL, M_PI / q,
          48, c.opt.order);
      im -= q * grad_far;
    }
    v += cd{re, im};
    if (k == n / 2) {
      T->H[n / 2] = {v.real(), 0.0};
    } else {
      T->H[k] = v;
      T->H[n - k] = std::conj(v);
    }
  }
}

// ------------------------------------------------------------- d >= 2 ------

// Radial reductions for the supported coefficient structures: the even part
// integrates against the sphere transform w_d, the cosine-angular odd part
// against the first circular harmonic.
struct RadialParts {
  double even = 0.0;
  double odd = 0.0;
};

void build_nd(const BuildContext& c, const std::vector<MomentTerm>& terms,
              Transfer* T) {
  const GridSpec& g = c.grid;
  const OperatorSpec& spec = c.spec;
  const int d = spec.d;
  auto j = spec.kernel.eval;
  const bool cc = coefficient_is_constant(spec.coefficient);
  const bool cosang =
      d == 2 && spec.coefficient.label.rfind("cosang(", 0) == 0;
  const double base = 0.5 * (spec.coefficient.nu + spec.coefficient.Lambda);
  const double cb = cc ? spec.coefficient(std::vector<double>(d, 1.0)) : base;
  double amp_signed = 0.0;
  if (cosang) {
    amp_signed = spec.coefficient(std::vector<double>{1.0, 0.0}) - base;
    if (spec.reflected()) amp_signed = -amp_signed;
  }

  const double bL = c.far_end;
  auto mass_env = [&](double r) {
    double rp = 1.0;
    for (int i = 0; i < d - 1; ++i) rp *= r;
    return j(r) * rp;
  };
  TailIntegral mass = integrate_octaves_up(mass_env, bL, c.opt.tail_rel_tol);
  if (!mass.converged)
    throw std::runtime_error("direct apply: kernel tail mass diverges");
  double mom2_far = 0.0;
  if (cosang && effective_chi(spec) == ChiRegime::Full) {
    TailIntegral gm = integrate_octaves_up(
        [&](double r) { return r * r * j(r); }, bL, c.opt.tail_rel_tol);
    if (!gm.converged)
      throw std::runtime_error("direct apply: tail gradient moment diverges");
    mom2_far = gm.value;
  }
  const double Wd = sphere_measure(d);

  auto radial_parts = [&](double q) {
    RadialParts rp;
    for (size_t i = 0; i + 1 < c.cuts.size(); ++i) {
      const double lo = c.cuts[i], hi = c.cuts[i + 1];
      const int m = piece_panels(q, lo, hi);
      rp.even += integrate_segments(
          [&](double r) { return one_minus_cos_sphere(d, q * r) * mass_env(r); },
          lo, hi, m, c.opt.order);
      if (cosang) {
        const double chi = spec.chi_at(0.5 * (lo + hi));
        rp.odd += integrate_segments(
            [&](double r) {
              const double s = q * r;
              double w;
              if (chi > 0.0) {
                w = s <= 14.0 ? M_PI * s * two_j1_over_x_minus_one(s)
                              : 2.0 * M_PI * bessel_j1(s) - M_PI * s;
              } else {
                w = 2.0 * M_PI * bessel_j1(s);
              }
              return w * j(r) * r;
            },
            lo, hi, m, c.opt.order);
      }
    }
    rp.even += Wd * mass.value;
    rp.even -= integrate_alternating_tail(
        [&](double r) { return osc_sphere(d, q * r) * mass_env(r); }, bL,
        M_PI / q, 48, c.opt.order);
    if (cosang) {
      rp.odd += integrate_alternating_tail(
          [&](double r) { return 2.0 * M_PI * bessel_j1(q * r) * j(r) * r; },
          bL, M_PI / q, 48, c.opt.order);
      rp.odd -= M_PI * q * mom2_far;
    }
    return rp;
  };

  std::map<std::uint64_t, RadialParts> by_q;
  int idx[3], midx[3];
  double xi3[3] = {0.0, 0.0, 0.0};
  for (std::int64_t i = 0; i < g.size(); ++i) {
    g.unflatten(i, idx);
    bool self = true, nyq = false;
    for (int a = 0; a < d; ++a) {
      midx[a] = idx[a] == 0 ? 0 : g.n - idx[a];
      if (midx[a] != idx[a]) self = false;
      if (g.freq_index(idx[a]) == -g.n / 2) nyq = true;
    }
    const std::int64_t mi = g.flatten(midx);
    if (mi < i) continue;
    double s2 = 0.0;
    for (int a = 0; a < d; ++a) {
      xi3[a] = g.xi_of(g.freq_index(idx[a]));
      s2 += xi3[a] * xi3[a];
    }
    const double q = std::sqrt(s2);
    if (q == 0.0) {
      T->H[i] = 0.0;
      continue;
    }
    const std::uint64_t qb = std::bit_cast<std::uint64_t>(q);
    auto it = by_q.find(qb);
    RadialParts rp;
    if (it == by_q.end()) {
      rp = radial_parts(q);
      by_q.emplace(qb, rp);
    } else {
      rp = it->second;
    }
    cd v = inner_value(terms, xi3);
    v += cd{-cb * rp.even, cosang ? amp_signed * (xi3[0] / q) * rp.odd : 0.0};
    if (self || nyq) v = {v.real(), 0.0};
    T->H[i] = v;
    T->H[mi] = std::conj(v);
  }
}

const Transfer& transfer_for(const OperatorSpec& spec, const GridSpec& grid,
                             const ApplyOptions& opt) {
  std::ostringstream os;
  os.precision(17);
  os << spec_cache_key(spec) << "|apply|n=" << grid.n << "|B=" << grid.box
     << "|df=" << opt.delta_factor << "|tol=" << opt.tail_rel_tol
     << "|ord=" << opt.order << "|ang=" << opt.angular_points;
  const std::string key = os.str();
  {
    std::lock_guard<std::mutex> lock(g_transfer_mutex);
    auto it = g_transfer_cache.find(key);
    if (it != g_transfer_cache.end()) return it->second;
  }

  BuildContext c{spec, grid, opt, 0.0, 0.0, 0.0, {}, false};
  c.delta = opt.delta_factor * grid.h();
  c.far_start = 0.25 * grid.box;
  if (c.delta >= c.far_start)
    throw std::invalid_argument(
        "direct apply: inner cutoff reaches the mid-zone boundary; refine "
        "the grid");
  if (effective_chi(spec) == ChiRegime::UnitBall && c.delta > 1.0)
    throw std::invalid_argument(
        "direct apply: inner cutoff exceeds the unit ball; refine the grid");
  double fe = c.far_start;
  for (double k : spec.coefficient.radial_kinks) fe = std::max(fe, k);
  if (effective_chi(spec) == ChiRegime::UnitBall) fe = std::max(fe, 1.0);
  c.far_end = fe;
  c.cuts = zone_cuts(spec, c.delta, c.far_end);
  c.odd_vanishes = spec.coefficient.fully_even ||
                   coefficient_is_constant(spec.coefficient);

  Transfer T;
  T.H.assign(grid.size(), cd{0.0, 0.0});
  std::vector<MomentTerm> terms;
  build_inner(c, &terms, &T.abs_moment5);
  if (spec.d == 1) {
    build_1d(c, terms, &T);
  } else {
    build_nd(c, terms, &T);
  }

  std::lock_guard<std::mutex> lock(g_transfer_mutex);
  return g_transfer_cache.emplace(key, std::move(T)).first->second;
}

}  // namespace

ApplyResult apply_direct(const OperatorSpec& spec, const GridFunction& u,
                         const ApplyOptions& opt) {
  validate(u.grid);
  if (u.grid.d != spec.d)
    throw std::invalid_argument(
        "direct apply: grid dimension does not match the operator");
  const bool odd_vanishes = spec.coefficient.fully_even ||
                            coefficient_is_constant(spec.coefficient);
  if (spec.sigma == 1.0 && !opt.cancellation_certified && !odd_vanishes)
    throw std::runtime_error(
        "order-1 kernel without a cancellation certificate: the odd part is "
        "not absolutely integrable");
  if (spec.d >= 2 && !coefficient_is_constant(spec.coefficient) &&
      !(spec.d == 2 &&
        spec.coefficient.label.rfind("cosang(", 0) == 0))
    throw std::invalid_argument(
        "direct apply: unsupported coefficient structure for d >= 2 "
        "(supported: constant, and d=2 cosine-angular)");

  const Transfer& T = transfer_for(spec, u.grid, opt);

  ApplyResult res;
  const double frac = top_octave_energy_fraction(u);
  if (frac >= 1e-6) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific
       << "band-limit precondition failed: top-octave energy fraction "
       << frac;
    res.warning = os.str();
  }

  Spectrum s = dft(u);
  double smax = 0.0;
  for (const cd& v : s) smax = std::max(smax, std::abs(v));
  double xi_band = 0.0;
  int idx[3];
  for (std::int64_t i = 0; i < u.grid.size(); ++i) {
    if (std::abs(s[i]) <= 1e-13 * smax) continue;
    u.grid.unflatten(i, idx);
    double s2 = 0.0;
    for (int a = 0; a < u.grid.d; ++a) {
      const double x = u.grid.xi_of(u.grid.freq_index(idx[a]));
      s2 += x * x;
    }
    xi_band = std::max(xi_band, std::sqrt(s2));
  }
  for (std::int64_t i = 0; i < u.grid.size(); ++i) s[i] *= T.H[i];
  res.out = idft(s, u.grid);

  double l2 = 0.0;
  for (double v : u.values) l2 += v * v;
  const double hd = std::pow(u.grid.h(), u.grid.d);
  l2 = std::sqrt(l2 * hd);
  res.error_budget =
      std::pow(xi_band, 5) / 120.0 * T.abs_moment5 * l2;
  return res;
}

GridFunction apply_spectral(const SymbolTable& table, const GridFunction& u) {
  validate(u.grid);
  if (!(table.grid == u.grid))
    throw std::invalid_argument(
        "apply_spectral: symbol table grid does not match the field grid");
  Spectrum s = dft(u);
  const GridSpec& g = u.grid;
  int idx[3], midx[3];
  for (std::int64_t i = 0; i < g.size(); ++i) {
    g.unflatten(i, idx);
    bool self = true;
    for (int a = 0; a < g.d; ++a) {
      midx[a] = idx[a] == 0 ? 0 : g.n - idx[a];
      if (midx[a] != idx[a]) self = false;
    }
    const std::int64_t mi = g.flatten(midx);
    if (mi < i) continue;
    cd v = 0.5 * (table.values[i] + std::conj(table.values[mi]));
    if (self) v = {v.real(), 0.0};
    s[i] *= v;
    if (mi != i) s[mi] *= std::conj(v);
  }
  return idft(s, g);
}

}  // namespace nonloc
