#include "nonloc/solver.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "nonloc/apply.hpp"
#include "nonloc/quadrature.hpp"

namespace nonloc {

namespace {

using cd = std::complex<double>;

// Hermitian-symmetrized multiplier value for the canonical index; the mirror
// carries the conjugate.
cd symmetrized(const SymbolTable& table, const GridSpec& g, std::int64_t i,
               std::int64_t mi, bool self) {
  cd v = 0.5 * (table.values[i] + std::conj(table.values[mi]));
  (void)g;
  if (self) v = {v.real(), 0.0};
  return v;
}

double rel_l2(const GridFunction& a, const GridFunction& b) {
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < a.values.size(); ++i) {
    const double d = a.values[i] - b.values[i];
    num += d * d;
    den += b.values[i] * b.values[i];
  }
  if (den == 0.0) return num == 0.0 ? 0.0 : std::sqrt(num / 1e-300);
  return std::sqrt(num / den);
}

double residual_for(const SymbolTable& table, const GridFunction& u,
                    const GridFunction& f, double lambda) {
  GridFunction lu = apply_spectral(table, u);
  GridFunction lhs = lu;
  for (size_t i = 0; i < lhs.values.size(); ++i)
    lhs.values[i] -= lambda * u.values[i];
  return rel_l2(lhs, f);
}

// Applies op to the spectrum of f mode by mode and inverts; op receives the
// symmetrized multiplier value.
template <typename Op>
GridFunction per_mode(const SymbolTable& table, const GridFunction& f,
                      Op&& op) {
  Spectrum s = dft(f);
  const GridSpec& g = f.grid;
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
    const cd v = symmetrized(table, g, i, mi, self);
    const cd factor = op(v);
    s[i] *= factor;
    if (mi != i) s[mi] *= std::conj(factor);
  }
  return idft(s, g);
}

}  // namespace

SolveResult resolvent_solve(const SymbolTable& table, const GridFunction& f,
                            double lambda) {
  validate(f.grid);
  if (!(lambda > 0.0))
    throw std::invalid_argument(
        "resolvent: lambda must be positive (the multiplier vanishes at "
        "xi = 0)");
  if (!(table.grid == f.grid))
    throw std::invalid_argument(
        "resolvent: symbol table grid does not match the field grid");

  SolveResult out;
  out.u = per_mode(table, f, [lambda](cd m) { return 1.0 / (m - lambda); });
  out.method = "resolvent";
  out.residual = residual_for(table, out.u, f, lambda);
  out.diagnostics["lambda"] = lambda;
  return out;
}

SolveResult semigroup_solve(const SymbolTable& table, const GridFunction& f,
                            double lambda, const SemigroupOptions& opt) {
  validate(f.grid);
  if (!(lambda > 0.0))
    throw std::invalid_argument("semigroup: lambda must be positive");
  if (!(table.grid == f.grid))
    throw std::invalid_argument(
        "semigroup: symbol table grid does not match the field grid");
  if (opt.nodes < 64)
    throw std::invalid_argument(
        "semigroup: the time quadrature needs at least 64 Laguerre nodes");

  const GaussRule& rule = gauss_laguerre(opt.nodes);
  // u_k = -hat f_k int_0^inf e^{-lambda t} e^{t m_k} dt.  Substituting
  // s = (lambda + |Re m_k|) t leaves the Laguerre weight times a unimodular
  // oscillation e^{i theta s}, so one rule serves every mode.
  SolveResult out;
  out.u = per_mode(table, f, [&](cd m) {
    const double rho = std::max(0.0, -m.real());
    const double scale = lambda + rho;
    const double theta = m.imag() / scale;
    cd acc{0.0, 0.0};
    for (size_t i = 0; i < rule.x.size(); ++i) {
      const double phase = theta * rule.x[i];
      acc += rule.w[i] * cd{std::cos(phase), std::sin(phase)};
    }
    return -acc / scale;
  });
  out.method = "semigroup";
  out.residual = residual_for(table, out.u, f, lambda);
  out.diagnostics["lambda"] = lambda;
  out.diagnostics["nodes"] = static_cast<double>(opt.nodes);
  return out;
}

// ---------------------------------------------------------------- stable ---

StableSampler::StableSampler(double alpha, std::uint64_t seed)
    : alpha_(alpha), rng_(seed) {
  if (!(alpha > 0.0 && alpha <= 2.0))
    throw std::invalid_argument("stable index must lie in (0, 2]");
}

double StableSampler::uniform() {
  // 53-bit mantissa draw, strictly inside (0, 1)
  return (static_cast<double>(rng_() >> 11) + 0.5) * 0x1.0p-53;
}

double StableSampler::draw_symmetric() {
  const double u = M_PI * (uniform() - 0.5);
  if (alpha_ == 1.0) return std::tan(u);
  const double w = -std::log(uniform());
  const double t = std::sin(alpha_ * u) /
                   std::pow(std::cos(u), 1.0 / alpha_);
  const double s =
      std::pow(std::cos(u - alpha_ * u) / w, (1.0 - alpha_) / alpha_);
  return t * s;
}

double StableSampler::draw_one_sided() {
  if (!(alpha_ < 1.0))
    throw std::invalid_argument(
        "one-sided stable draws require an index below 1");
  // Kanter's representation: E e^{-s X} = e^{-s^alpha}.
  const double u = M_PI * uniform();
  const double w = -std::log(uniform());
  const double a = std::pow(std::sin(alpha_ * u), alpha_ / (1.0 - alpha_)) *
                   std::sin((1.0 - alpha_) * u) /
                   std::pow(std::sin(u), 1.0 / (1.0 - alpha_));
  return std::pow(a / w, (1.0 - alpha_) / alpha_);
}

FeynmanKacResult feynman_kac_mc(
    double alpha, int d,
    const std::function<double(const std::vector<double>&)>& f, double lambda,
    const std::vector<std::vector<double>>& probes,
    const FeynmanKacOptions& opt) {
  if (!(alpha > 0.0 && alpha <= 2.0))
    throw std::invalid_argument("stable index must lie in (0, 2]");
  if (d < 1 || d > 3)
    throw std::invalid_argument("dimension must be 1, 2 or 3");
  if (!(lambda > 0.0))
    throw std::invalid_argument("feynman-kac: lambda must be positive");
  if (opt.paths < 1000)
    throw std::invalid_argument(
        "feynman-kac: fewer than 1000 paths gives meaningless error bars");
  for (const auto& p : probes)
    if (static_cast<int>(p.size()) != d)
      throw std::invalid_argument("probe point dimension mismatch");

  // Increment engine: d = 1 draws the symmetric stable directly; d >= 2
  // subordinates a Gaussian vector by a one-sided (alpha/2)-stable time,
  // X_T = sqrt(2 T^{2/alpha} V) Z.  alpha = 2 is the Gaussian branch with
  // exponent -t |xi|^2.
  const bool gaussian = alpha == 2.0;
  StableSampler stab(gaussian ? 2.0 : (d == 1 ? alpha : alpha / 2.0),
                     opt.seed);
  std::mt19937_64 aux(opt.seed ^ 0x9e3779b97f4a7c15ull);
  auto unif = [&aux]() {
    return (static_cast<double>(aux() >> 11) + 0.5) * 0x1.0p-53;
  };
  auto normal = [&]() {
    const double r = std::sqrt(-2.0 * std::log(unif()));
    return r * std::cos(2.0 * M_PI * unif());
  };

  const size_t np = probes.size();
  std::vector<double> sum(np, 0.0), sumsq(np, 0.0);
  std::vector<double> x(d), inc(d);
  for (std::int64_t path = 0; path < opt.paths; ++path) {
    const double T = -std::log(unif()) / lambda;
    if (gaussian) {
      const double s = std::sqrt(2.0 * T);
      for (int a = 0; a < d; ++a) inc[a] = s * normal();
    } else if (d == 1) {
      inc[0] = std::pow(T, 1.0 / alpha) * stab.draw_symmetric();
    } else {
      const double v = stab.draw_one_sided();
      const double s = std::sqrt(2.0 * std::pow(T, 2.0 / alpha) * v);
      for (int a = 0; a < d; ++a) inc[a] = s * normal();
    }
    for (size_t p = 0; p < np; ++p) {
      for (int a = 0; a < d; ++a) x[a] = probes[p][a] + inc[a];
      const double val = f(x);
      sum[p] += val;
      sumsq[p] += val * val;
    }
  }

  FeynmanKacResult out;
  out.paths = opt.paths;
  out.seed = opt.seed;
  const double n = static_cast<double>(opt.paths);
  for (size_t p = 0; p < np; ++p) {
    const double mean = sum[p] / n;
    const double var = std::max(0.0, sumsq[p] / n - mean * mean);
    out.estimate.push_back(-mean / lambda);
    out.standard_error.push_back(std::sqrt(var / n) / lambda);
  }
  return out;
}

}  // namespace nonloc
