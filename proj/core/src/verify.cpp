// Ensemble experiments for the a-priori resolvent estimates.  Explicit
// constants are checked with 5% discretization slack; estimates whose
// constant is not explicit are run as monitored constants with a
// grid-doubling stability gate.

#include "nonloc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nonloc/apply.hpp"
#include "nonloc/fieldops.hpp"
#include "nonloc/solver.hpp"
#include "nonloc/symbol.hpp"

namespace nonloc {

namespace {

constexpr std::int64_t kRefineTrials = 6;
constexpr double kExplicitSlack = 1.05;
const double kInf = std::numeric_limits<double>::infinity();

std::uint64_t mix(std::uint64_t base, std::uint64_t trial, std::uint64_t salt) {
  std::uint64_t x = base + 0x9e3779b97f4a7c15ull * (trial + 1) +
                    0x2545f4914f6cdd1dull * (salt + 1);
  x ^= x >> 33;
  x *= 0xff51afd7ed558ccdull;
  x ^= x >> 33;
  x *= 0xc4ceb9fe1a85ec53ull;
  x ^= x >> 33;
  return x;
}

double u01(std::mt19937_64& rng) {
  return ((rng() >> 11) + 0.5) * 0x1.0p-53;
}

GridSpec base_grid(const EnsembleConfig& cfg) {
  return GridSpec{cfg.d, cfg.n, cfg.box};
}

GridSpec doubled_grid(const EnsembleConfig& cfg) {
  return GridSpec{cfg.d, 2 * cfg.n, cfg.box};
}

// Per-trial coefficient.  In d = 1 the full piecewise-random class is
// available; in d >= 2 the spectral pipeline covers the constant and
// cosine-angular classes, so random ensembles draw within those.
CoefficientField trial_coefficient(const EnsembleConfig& cfg,
                                   std::int64_t trial) {
  if (!cfg.random_coefficient) return coefficient_one();
  if (cfg.sigma == 1.0) {
    // order one admits only the surface-cancelling class
    if (cfg.d == 1) {
      RandomCoefficientOptions opt;
      opt.nu = cfg.nu;
      opt.Lambda = cfg.Lambda;
      opt.fully_even = true;
      return coefficient_random(1, mix(cfg.base_seed, trial, 1), opt);
    }
    std::mt19937_64 eng(mix(cfg.base_seed, trial, 1));
    return coefficient_constant(cfg.nu + u01(eng) * (cfg.Lambda - cfg.nu));
  }
  if (cfg.d == 1) {
    RandomCoefficientOptions opt;
    opt.nu = cfg.nu;
    opt.Lambda = cfg.Lambda;
    return coefficient_random(1, mix(cfg.base_seed, trial, 1), opt);
  }
  std::mt19937_64 eng(mix(cfg.base_seed, trial, 1));
  if (cfg.d == 2) {
    const double half = 0.5 * (cfg.Lambda - cfg.nu);
    const double mid = 0.5 * (cfg.Lambda + cfg.nu);
    const double amp = (2.0 * u01(eng) - 1.0) * 0.95 * half;
    const double play = half - std::abs(amp);
    const double base = mid + (2.0 * u01(eng) - 1.0) * 0.95 * play;
    return coefficient_cosine_angular(base, amp);
  }
  return coefficient_constant(cfg.nu + u01(eng) * (cfg.Lambda - cfg.nu));
}

// Coefficient class for the drift-compensated trials under an H3 gate:
// evenness inside (sigma < 1) or outside (sigma > 1) the unit ball makes the
// annulus first moments vanish exactly; at sigma = 1 the fully even class
// satisfies the surface cancellation the same way.
CoefficientField trial_coefficient_h3(const EnsembleConfig& cfg,
                                      std::int64_t trial) {
  if (!cfg.random_coefficient) return coefficient_one();
  if (cfg.d == 1) {
    RandomCoefficientOptions opt;
    opt.nu = cfg.nu;
    opt.Lambda = cfg.Lambda;
    if (cfg.sigma < 1.0)
      opt.even_inside_unit_ball = true;
    else if (cfg.sigma > 1.0)
      opt.even_outside_unit_ball = true;
    else
      opt.fully_even = true;
    return coefficient_random(1, mix(cfg.base_seed, trial, 5), opt);
  }
  std::mt19937_64 eng(mix(cfg.base_seed, trial, 5));
  return coefficient_constant(cfg.nu + u01(eng) * (cfg.Lambda - cfg.nu));
}

// Places the coarse spectrum on a finer lattice; the result samples the same
// trigonometric polynomial, so doubled-grid reruns see the identical problem.
GridFunction inject_fine(const GridFunction& coarse, const GridSpec& fine) {
  const GridSpec& g = coarse.grid;
  Spectrum sc = dft(coarse);
  Spectrum sf(fine.size(), {0.0, 0.0});
  int idx[3] = {0, 0, 0};
  int fidx[3] = {0, 0, 0};
  for (std::int64_t i = 0; i < g.size(); ++i) {
    if (sc[i] == std::complex<double>(0.0, 0.0)) continue;
    g.unflatten(i, idx);
    for (int a = 0; a < g.d; ++a) {
      const int k = g.freq_index(idx[a]);
      fidx[a] = k >= 0 ? k : fine.n + k;
    }
    sf[fine.flatten(fidx)] = sc[i];
  }
  return idft(sf, fine);
}

// Band-limited data is always drawn on the base grid of the config.
GridFunction trial_data(const EnsembleConfig& cfg, const GridSpec& grid,
                        std::int64_t trial) {
  const GridSpec base = base_grid(cfg);
  GridFunction f = random_band_limited(base, mix(cfg.base_seed, trial, 2));
  if (grid == base) return f;
  return inject_fine(f, grid);
}

std::int64_t origin_index(const GridSpec& g) {
  return g.index_of_point_near(std::vector<double>(g.d, 0.0));
}

struct PassResult {
  std::vector<TrialRecord> records;
  double worst = 0.0;

  void note(double ratio) {
    if (std::isfinite(ratio))
      worst = std::max(worst, ratio);
    else
      worst = kInf;
  }
};

TrialRecord record(std::int64_t trial, std::map<std::string, double> q) {
  TrialRecord r;
  r.trial = trial;
  r.quantities = std::move(q);
  return r;
}

double worst_under(const std::vector<TrialRecord>& recs, std::int64_t limit) {
  double w = 0.0;
  for (const auto& r : recs) {
    if (r.trial >= limit) continue;
    if (r.quantities.count("skipped") || r.quantities.count("extremal"))
      continue;
    auto it = r.quantities.find("ratio");
    if (it != r.quantities.end()) w = std::max(w, it->second);
  }
  return w;
}

bool refinement_ok(double coarse, double fine) {
  if (!std::isfinite(coarse) || !std::isfinite(fine)) return false;
  const double tol = 1e-9;
  return fine <= 2.0 * coarse + tol && coarse <= 2.0 * fine + tol;
}

void require_pass(const CertificateSet& cs, const std::string& id,
                  const char* suite) {
  const HypothesisCertificate* c = cs.find(id);
  if (c == nullptr)
    throw std::runtime_error(std::string(suite) + ": no " + id +
                             " certificate was produced for this spec");
  if (!c->passed())
    throw std::runtime_error(std::string(suite) +
                             ": prerequisite certificate " + id +
                             " did not pass (" + verdict_name(c->verdict) +
                             ")");
}

// Certificate gate shared by the estimate suites.  The drift-compensated
// variant additionally needs the inner-asymmetry clause below order one and
// the outer clause above; the tail-domination clause is advisory and never
// gates.
CertificateSet gate_certificates(const OperatorSpec& spec, const char* suite,
                                 bool need_h2, bool need_h3) {
  CertificateSet cs = certify(spec);
  require_pass(cs, "H1", suite);
  if (need_h2) require_pass(cs, "H2", suite);
  if (spec.sigma == 1.0) require_pass(cs, "CANCEL", suite);
  if (need_h3) {
    if (spec.sigma < 1.0)
      require_pass(cs, "H3ii", suite);
    else if (spec.sigma > 1.0)
      require_pass(cs, "H3iv", suite);
  }
  return cs;
}

std::string describe(const EnsembleConfig& cfg, std::int64_t refine_trials) {
  std::ostringstream os;
  os << "d=" << cfg.d << " n=" << cfg.n << " box=" << cfg.box
     << " trials=" << cfg.trials << " base_seed=" << cfg.base_seed
     << " kernel=" << cfg.kernel.label << " sigma=" << cfg.sigma << " coeff=";
  if (cfg.random_coefficient)
    os << "random[" << cfg.nu << "," << cfg.Lambda << "]";
  else
    os << "one";
  os << " lambdas={";
  for (std::size_t i = 0; i < cfg.lambdas.size(); ++i)
    os << (i ? "," : "") << cfg.lambdas[i];
  os << "} ps={";
  for (std::size_t i = 0; i < cfg.ps.size(); ++i)
    os << (i ? "," : "") << cfg.ps[i];
  os << "}; grid-doubling rerun: " << refine_trials << " trials at n="
     << 2 * cfg.n << " (records carry grid_n)";
  return os.str();
}

double variant_code(OperatorVariant v) {
  return v == OperatorVariant::L ? 0.0 : 1.0;
}

}  // namespace

VerificationReport verify_resolvent_bound(const EnsembleConfig& cfg) {
  const std::int64_t sub = std::min<std::int64_t>(cfg.trials, kRefineTrials);

  auto run = [&cfg](const GridSpec& grid, std::int64_t trials) {
    PassResult pr;
    for (std::int64_t t = 0; t < trials; ++t) {
      const CoefficientField a = trial_coefficient(cfg, t);
      const GridFunction f = trial_data(cfg, grid, t);
      for (OperatorVariant v : {OperatorVariant::L, OperatorVariant::LTilde}) {
        const OperatorSpec spec = make_spec(cfg.d, cfg.kernel, a, cfg.sigma, v);
        const SymbolTable table =
            full_symbol(spec, grid, cfg.cancellation_certified);
        for (double lambda : cfg.lambdas) {
          const SolveResult sol = resolvent_solve(table, f, lambda);
          for (double p : cfg.ps) {
            const double lhs = lambda * lp_norm(sol.u, p);
            const double rhs = lp_norm(f, p);
            const double ratio = lhs / rhs;
            pr.records.push_back(record(t, {{"variant", variant_code(v)},
                                            {"lambda", lambda},
                                            {"p", p},
                                            {"lhs", lhs},
                                            {"rhs", rhs},
                                            {"ratio", ratio},
                                            {"grid_n", double(grid.n)}}));
            pr.note(ratio);
          }
        }
      }
    }
    return pr;
  };

  PassResult main = run(base_grid(cfg), cfg.trials);
  PassResult fine = run(doubled_grid(cfg), sub);
  const double w1 = worst_under(main.records, sub);

  VerificationReport rep;
  rep.estimate_id = "resolvent-bound";
  rep.ensemble_note = describe(cfg, sub) + "; variant 0=" +
                      variant_name(OperatorVariant::L) + " 1=" +
                      variant_name(OperatorVariant::LTilde);
  rep.trials = std::move(main.records);
  rep.trials.insert(rep.trials.end(), fine.records.begin(),
                    fine.records.end());
  rep.worst_ratio = std::max(main.worst, fine.worst);
  rep.refinement_stable = refinement_ok(w1, fine.worst);
  rep.verdict =
      rep.worst_ratio <= kExplicitSlack ? Verdict::Pass : Verdict::Fail;
  std::ostringstream d;
  d << "sup lambda||u||_p/||f||_p = " << rep.worst_ratio << " (slack "
    << kExplicitSlack << "); doubling " << w1 << " -> " << fine.worst;
  rep.diagnostic = d.str();
  return rep;
}

VerificationReport verify_L2(const EnsembleConfig& cfg) {
  {
    const OperatorSpec gate_spec =
        make_spec(cfg.d, cfg.kernel, trial_coefficient(cfg, 0), cfg.sigma,
                  OperatorVariant::L);
    gate_certificates(gate_spec, "L2 estimate", true, false);
  }
  const std::int64_t sub = std::min<std::int64_t>(cfg.trials, kRefineTrials);
  const double sqrt2 = std::sqrt(2.0);
  bool symbol_ok = true;
  double symbol_worst = 0.0;

  auto run = [&](const GridSpec& grid, std::int64_t trials) {
    PassResult pr;
    const OperatorSpec specA = make_spec(cfg.d, cfg.kernel, coefficient_one(),
                                         cfg.sigma, OperatorVariant::A);
    const SymbolTable tableA =
        full_symbol(specA, grid, cfg.cancellation_certified);
    for (std::int64_t t = 0; t < trials; ++t) {
      const CoefficientField a = trial_coefficient(cfg, t);
      const GridFunction f = trial_data(cfg, grid, t);
      const double f2 = lp_norm(f, 2.0);
      const OperatorSpec spec =
          make_spec(cfg.d, cfg.kernel, a, cfg.sigma, OperatorVariant::L);
      const SymbolTable table =
          full_symbol(spec, grid, cfg.cancellation_certified);
      for (double lambda : cfg.lambdas) {
        const SolveResult sol = resolvent_solve(table, f, lambda);
        const GridFunction Au = apply_spectral(tableA, sol.u);
        const double rA = lp_norm(Au, 2.0) / ((sqrt2 / a.nu) * f2);
        const double rU = lambda * lp_norm(sol.u, 2.0) / (sqrt2 * f2);
        // modewise form of the same bound: nu Psi <= |m - lambda| and
        // lambda <= |m - lambda| imply the norm inequalities outright
        double sym_nu = 0.0, sym_lam = 0.0;
        for (std::int64_t i = 0; i < grid.size(); ++i) {
          const double psi_i = -tableA.values[i].real();
          const double den = std::abs(table.values[i] - lambda);
          sym_nu = std::max(sym_nu, a.nu * psi_i / den);
          sym_lam = std::max(sym_lam, lambda / den);
        }
        const double ratio = std::max(rA, rU);
        pr.records.push_back(record(t, {{"lambda", lambda},
                                        {"ratio_A", rA},
                                        {"ratio_lu", rU},
                                        {"symbol_nu_max", sym_nu},
                                        {"symbol_lambda_max", sym_lam},
                                        {"ratio", ratio},
                                        {"grid_n", double(grid.n)}}));
        pr.note(ratio);
        symbol_worst = std::max({symbol_worst, sym_nu, sym_lam});
        if (sym_nu > 1.0 + 1e-9 || sym_lam > 1.0 + 1e-9) symbol_ok = false;
      }
    }
    return pr;
  };

  PassResult main = run(base_grid(cfg), cfg.trials);
  PassResult fine = run(doubled_grid(cfg), sub);
  const double w1 = worst_under(main.records, sub);

  VerificationReport rep;
  rep.estimate_id = "L2-explicit";
  rep.ensemble_note =
      describe(cfg, sub) +
      "; ratio_A = nu||Au||_2/(sqrt2 ||f||_2), ratio_lu = lambda||u||_2/"
      "(sqrt2 ||f||_2)";
  rep.trials = std::move(main.records);
  rep.trials.insert(rep.trials.end(), fine.records.begin(),
                    fine.records.end());
  rep.worst_ratio = std::max(main.worst, fine.worst);
  rep.refinement_stable = refinement_ok(w1, fine.worst);
  const bool norms_ok = rep.worst_ratio <= kExplicitSlack;
  rep.verdict = (norms_ok && symbol_ok) ? Verdict::Pass : Verdict::Fail;
  std::ostringstream d;
  d << "sup ratio = " << rep.worst_ratio << " (slack " << kExplicitSlack
    << "); modewise sup = " << symbol_worst << " (must be <= 1); doubling "
    << w1 << " -> " << fine.worst;
  rep.diagnostic = d.str();
  return rep;
}

VerificationReport verify_Lp(const EnsembleConfig& cfg) {
  {
    gate_certificates(
        make_spec(cfg.d, cfg.kernel, trial_coefficient(cfg, 0), cfg.sigma,
                  OperatorVariant::L),
        "Lp estimate", true, false);
    gate_certificates(
        make_spec(cfg.d, cfg.kernel, trial_coefficient_h3(cfg, 0), cfg.sigma,
                  OperatorVariant::LTilde),
        "Lp estimate", true, true);
  }
  const std::int64_t sub = std::min<std::int64_t>(cfg.trials, kRefineTrials);
  // the constant must not depend on lambda; 16 extends the configured set so
  // the spread check sees a decade and a half
  std::vector<double> lams = cfg.lambdas;
  if (std::find(lams.begin(), lams.end(), 16.0) == lams.end())
    lams.push_back(16.0);

  auto run = [&](const GridSpec& grid, std::int64_t trials) {
    PassResult pr;
    const OperatorSpec specA = make_spec(cfg.d, cfg.kernel, coefficient_one(),
                                         cfg.sigma, OperatorVariant::A);
    const SymbolTable tableA =
        full_symbol(specA, grid, cfg.cancellation_certified);
    for (std::int64_t t = 0; t < trials; ++t) {
      const CoefficientField a_gen = trial_coefficient(cfg, t);
      const CoefficientField a_h3 = trial_coefficient_h3(cfg, t);
      const GridFunction f = trial_data(cfg, grid, t);
      for (OperatorVariant v : {OperatorVariant::L, OperatorVariant::LTilde}) {
        const CoefficientField& a =
            v == OperatorVariant::LTilde ? a_h3 : a_gen;
        const OperatorSpec spec = make_spec(cfg.d, cfg.kernel, a, cfg.sigma, v);
        const SymbolTable table =
            full_symbol(spec, grid, cfg.cancellation_certified);
        for (double lambda : lams) {
          const SolveResult sol = resolvent_solve(table, f, lambda);
          const GridFunction Au = apply_spectral(tableA, sol.u);
          for (double p : cfg.ps) {
            const double ratio =
                (lp_norm(Au, p) + lambda * lp_norm(sol.u, p)) / lp_norm(f, p);
            pr.records.push_back(record(t, {{"variant", variant_code(v)},
                                            {"lambda", lambda},
                                            {"p", p},
                                            {"ratio", ratio},
                                            {"grid_n", double(grid.n)}}));
            pr.note(ratio);
          }
        }
      }
    }
    return pr;
  };

  PassResult main = run(base_grid(cfg), cfg.trials);
  PassResult fine = run(doubled_grid(cfg), sub);
  const double w1 = worst_under(main.records, sub);

  std::map<double, double> lam_sup;
  for (const auto& r : main.records)
    lam_sup[r.quantities.at("lambda")] =
        std::max(lam_sup[r.quantities.at("lambda")], r.quantities.at("ratio"));
  double lo = kInf, hi = 0.0;
  for (const auto& [lam, s] : lam_sup) {
    (void)lam;
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  const bool uniform = hi <= 1.5 * lo;

  VerificationReport rep;
  rep.estimate_id = "Lp-monitored";
  rep.ensemble_note = describe(cfg, sub) +
                      "; monitored (||Au||_p + lambda||u||_p)/||f||_p; "
                      "variant 0=" +
                      variant_name(OperatorVariant::L) + " 1=" +
                      variant_name(OperatorVariant::LTilde) +
                      " (variant 1 draws the ball-even coefficient class "
                      "its certificates require)";
  rep.trials = std::move(main.records);
  rep.trials.insert(rep.trials.end(), fine.records.begin(),
                    fine.records.end());
  rep.worst_ratio = main.worst;
  rep.refinement_stable = refinement_ok(w1, fine.worst);
  rep.verdict = (std::isfinite(main.worst) && rep.refinement_stable && uniform)
                    ? Verdict::Pass
                    : Verdict::Fail;
  std::ostringstream d;
  d << "monitored constant = " << main.worst << "; per-lambda sups:";
  for (const auto& [lam, s] : lam_sup) d << " " << lam << ":" << s;
  d << " (spread x" << (lo > 0.0 ? hi / lo : kInf)
    << ", require <= x1.5); doubling " << w1 << " -> " << fine.worst;
  rep.diagnostic = d.str();
  return rep;
}

VerificationReport verify_positivity_max_principle(const EnsembleConfig& cfg) {
  const std::int64_t sub = std::min<std::int64_t>(cfg.trials, kRefineTrials);

  auto run = [&cfg](const GridSpec& grid, std::int64_t trials) {
    PassResult pr;
    for (std::int64_t t = 0; t < trials; ++t) {
      const CoefficientField a = trial_coefficient(cfg, t);
      std::mt19937_64 eng(mix(cfg.base_seed, t, 3));
      // bump center on the base lattice so both grids see the same bump
      const double hb = cfg.box / cfg.n;
      std::vector<double> c(cfg.d, 0.0);
      for (int ax = 0; ax < cfg.d; ++ax) {
        const std::int64_t j =
            3 * cfg.n / 8 + std::int64_t(eng() % std::uint64_t(cfg.n / 4));
        c[ax] = -cfg.box / 2 + double(j) * hb;
      }
      const double w = 0.5 + 1.5 * u01(eng);
      const GridFunction f = gaussian_bump(grid, c, w, -1.0);
      const double finf = lp_norm(f, kInf);
      for (OperatorVariant v : {OperatorVariant::L, OperatorVariant::LTilde}) {
        const OperatorSpec spec = make_spec(cfg.d, cfg.kernel, a, cfg.sigma, v);
        const SymbolTable table =
            full_symbol(spec, grid, cfg.cancellation_certified);
        {
          // uniqueness face: zero data must give the zero solution
          const SolveResult z =
              resolvent_solve(table, zeros(grid), cfg.lambdas.front());
          const double ratio = lp_norm(z.u, kInf) / 1e-12;
          pr.records.push_back(record(t, {{"check", 0.0},
                                          {"variant", variant_code(v)},
                                          {"ratio", ratio},
                                          {"grid_n", double(grid.n)}}));
          pr.note(ratio);
        }
        for (double lambda : cfg.lambdas) {
          const SolveResult sol = resolvent_solve(table, f, lambda);
          const double minu =
              *std::min_element(sol.u.values.begin(), sol.u.values.end());
          const double ratio = std::max(0.0, -minu) / (1e-8 * finf);
          pr.records.push_back(record(t, {{"check", 1.0},
                                          {"variant", variant_code(v)},
                                          {"lambda", lambda},
                                          {"min_u", minu},
                                          {"f_inf", finf},
                                          {"ratio", ratio},
                                          {"grid_n", double(grid.n)}}));
          pr.note(ratio);
        }
      }
    }
    return pr;
  };

  PassResult main = run(base_grid(cfg), cfg.trials);
  PassResult fine = run(doubled_grid(cfg), sub);
  const double w1 = worst_under(main.records, sub);

  VerificationReport rep;
  rep.estimate_id = "positivity-max-principle";
  rep.ensemble_note =
      describe(cfg, sub) +
      "; check 0: ||u||_inf/1e-12 for f=0; check 1: (-min u)+/(1e-8 "
      "||f||_inf) for f<=0";
  rep.trials = std::move(main.records);
  rep.trials.insert(rep.trials.end(), fine.records.begin(),
                    fine.records.end());
  rep.worst_ratio = std::max(main.worst, fine.worst);
  rep.refinement_stable = refinement_ok(w1, fine.worst);
  rep.verdict = rep.worst_ratio <= 1.0 ? Verdict::Pass : Verdict::Fail;
  std::ostringstream d;
  d << "worst normalized violation = " << rep.worst_ratio
    << " (must be <= 1); doubling " << w1 << " -> " << fine.worst;
  rep.diagnostic = d.str();
  return rep;
}

VerificationReport verify_holder(const HolderSuiteConfig& hcfg) {
  const EnsembleConfig& cfg = hcfg.base;
  const CertificateSet cs = gate_certificates(
      make_spec(cfg.d, cfg.kernel, trial_coefficient(cfg, 0), cfg.sigma,
                OperatorVariant::L),
      "holder estimate", true, false);
  double alpha0 = hcfg.alpha0;
  if (const HypothesisCertificate* h1 = cs.find("H1");
      h1 != nullptr && h1->constants.count("alpha0"))
    alpha0 = h1->constants.at("alpha0");
  const double cap = std::min(1.0, alpha0);
  if (!(hcfg.alpha > 0.0) || !(hcfg.alpha < cap)) {
    std::ostringstream os;
    os << "holder estimate: exponent " << hcfg.alpha << " must lie in (0, "
       << cap << ") (certified alpha0 = " << alpha0 << ")";
    throw std::invalid_argument(os.str());
  }
  if (!(hcfg.R > 0.0) || hcfg.R > cfg.box / 4)
    throw std::invalid_argument("holder estimate: R must lie in (0, box/4]");

  const std::int64_t sub = std::min<std::int64_t>(cfg.trials, kRefineTrials);
  const double denom_scale =
      cfg.kernel(hcfg.R) * std::pow(hcfg.R, cfg.d + hcfg.alpha);

  auto run = [&](const GridSpec& grid, std::int64_t trials) {
    PassResult pr;
    const std::int64_t c0 = origin_index(grid);
    for (std::int64_t t = 0; t < trials; ++t) {
      const CoefficientField a = trial_coefficient(cfg, t);
      const OperatorSpec spec =
          make_spec(cfg.d, cfg.kernel, a, cfg.sigma, OperatorVariant::L);
      const SymbolTable table =
          full_symbol(spec, grid, cfg.cancellation_certified);
      std::mt19937_64 eng(mix(cfg.base_seed, t, 4));
      auto amp = [&eng] {
        const double s = u01(eng) < 0.5 ? -1.0 : 1.0;
        return s * (0.2 + 0.8 * u01(eng));
      };
      const double a1 = amp(), a2 = amp();
      std::vector<double> c2(cfg.d, 0.0);
      c2[0] = (2.0 * u01(eng) - 1.0) * hcfg.R / 3.0;
      GridFunction f = gaussian_bump(grid, std::vector<double>(cfg.d, 0.0),
                                     hcfg.R / 5.0, a1);
      const GridFunction f2 = gaussian_bump(grid, c2, hcfg.R / 6.0, a2);
      for (std::int64_t i = 0; i < grid.size(); ++i) {
        f.values[i] += f2.values[i];
        // data supported (and varying) strictly inside B_R
        const std::vector<double> x = grid.point(i);
        double rr = 0.0;
        for (double v : x) rr += v * v;
        if (rr > hcfg.R * hcfg.R) f.values[i] = 0.0;
      }
      for (double lambda : cfg.lambdas) {
        const SolveResult sol = resolvent_solve(table, f, lambda);
        const double lhs =
            holder_seminorm(sol.u, hcfg.alpha, c0, hcfg.R / 2.0);
        const double rhs = (weighted_l1_norm(sol.u, cfg.kernel, hcfg.R) +
                            osc(f, c0, hcfg.R)) /
                           denom_scale;
        const double ratio = lhs / rhs;
        pr.records.push_back(record(t, {{"lambda", lambda},
                                        {"lhs", lhs},
                                        {"rhs", rhs},
                                        {"ratio", ratio},
                                        {"grid_n", double(grid.n)}}));
        pr.note(ratio);
      }
    }
    return pr;
  };

  PassResult main = run(base_grid(cfg), cfg.trials);
  PassResult fine = run(doubled_grid(cfg), sub);
  const double w1 = worst_under(main.records, sub);

  VerificationReport rep;
  rep.estimate_id = "holder-interior";
  {
    std::ostringstream os;
    os << describe(cfg, sub) << "; alpha=" << hcfg.alpha << " R=" << hcfg.R
       << " denom j(R)R^(d+alpha)=" << denom_scale;
    rep.ensemble_note = os.str();
  }
  rep.trials = std::move(main.records);
  rep.trials.insert(rep.trials.end(), fine.records.begin(),
                    fine.records.end());
  rep.worst_ratio = main.worst;
  rep.refinement_stable = refinement_ok(w1, fine.worst);
  rep.verdict = (std::isfinite(main.worst) && rep.refinement_stable)
                    ? Verdict::Pass
                    : Verdict::Fail;
  std::ostringstream d;
  d << "monitored constant = " << main.worst << "; doubling " << w1 << " -> "
    << fine.worst;
  rep.diagnostic = d.str();
  return rep;
}

VerificationReport verify_sharp_oscillation(const SharpOscillationConfig& scfg) {
  const EnsembleConfig& cfg = scfg.base;
  gate_certificates(
      make_spec(cfg.d, cfg.kernel, trial_coefficient(cfg, 0), cfg.sigma,
                OperatorVariant::L),
      "sharp oscillation", true, false);
  if (scfg.kappas.empty())
    throw std::invalid_argument("sharp oscillation: empty kappa set");
  for (double k : scfg.kappas)
    if (!(k >= 2.0))
      throw std::invalid_argument("sharp oscillation: kappa must be >= 2");
  if (!(scfg.r > 0.0) || !(scfg.r < cfg.box / 4))
    throw std::invalid_argument("sharp oscillation: r must lie in (0, box/4)");

  const std::int64_t sub = std::min<std::int64_t>(cfg.trials, kRefineTrials);
  const double bump_w = 1.0;
  const double rho_c = cfg.box / 2.0 - 3.5 * bump_w;
  const double vanish_radius = rho_c - 3.0 * bump_w;
  bool trend_ok = true;
  double far_first_group_sup = 0.0;

  auto run = [&](const GridSpec& grid, std::int64_t trials) {
    PassResult pr;
    const std::int64_t c0 = origin_index(grid);
    const OperatorSpec specA = make_spec(cfg.d, cfg.kernel, coefficient_one(),
                                         cfg.sigma, OperatorVariant::A);
    const SymbolTable tableA =
        full_symbol(specA, grid, cfg.cancellation_certified);

    auto process = [&](std::int64_t t, const SymbolTable& table,
                       const GridFunction& f, bool far) {
      GridFunction fsq = f;
      for (double& v : fsq.values) v *= v;
      const double Mf2 = maximal_function(fsq, c0);
      for (double lambda : cfg.lambdas) {
        const SolveResult sol = resolvent_solve(table, f, lambda);
        const GridFunction Au = apply_spectral(tableA, sol.u);
        const double lhs = lambda * mean_oscillation(sol.u, c0, scfg.r) +
                           mean_oscillation(Au, c0, scfg.r);
        const double Mu0 = maximal_function(sol.u, c0);
        const double MAu0 = maximal_function(Au, c0);
        double prev_g1 = kInf;
        for (double kappa : scfg.kappas) {
          if (far && 2.0 * kappa * scfg.r > vanish_radius) continue;
          const double g1 =
              std::pow(kappa, -scfg.alpha) * (lambda * Mu0 + MAu0);
          const double rhs =
              g1 + std::pow(kappa, cfg.d / 2.0) * std::sqrt(Mf2);
          const double ratio = lhs / rhs;
          std::map<std::string, double> q = {{"lambda", lambda},
                                             {"kappa", kappa},
                                             {"far", far ? 1.0 : 0.0},
                                             {"lhs", lhs},
                                             {"rhs", rhs},
                                             {"ratio", ratio},
                                             {"grid_n", double(grid.n)}};
          if (far) {
            const double fr = g1 > 0.0 ? lhs / g1 : kInf;
            q["far_ratio"] = fr;
            far_first_group_sup = std::max(far_first_group_sup, fr);
            if (!(g1 <= prev_g1 + 1e-12)) trend_ok = false;
            prev_g1 = g1;
          }
          pr.records.push_back(record(t, std::move(q)));
          pr.note(ratio);
        }
      }
    };

    for (std::int64_t t = 0; t < trials; ++t) {
      const CoefficientField a = trial_coefficient(cfg, t);
      const OperatorSpec spec =
          make_spec(cfg.d, cfg.kernel, a, cfg.sigma, OperatorVariant::L);
      const SymbolTable table =
          full_symbol(spec, grid, cfg.cancellation_certified);
      process(t, table, trial_data(cfg, grid, t), false);
      // data vanishing near the origin: bump out at radius rho_c, truncated
      // so f = 0 exactly on the ball the corollary regime needs
      std::vector<double> c(cfg.d, 0.0);
      c[0] = rho_c;
      GridFunction fb = gaussian_bump(grid, c, bump_w, 1.0);
      for (std::int64_t i = 0; i < grid.size(); ++i) {
        const std::vector<double> x = grid.point(i);
        double rr = 0.0;
        for (int ax = 0; ax < cfg.d; ++ax) {
          double dx = x[ax] - c[ax];
          dx -= cfg.box * std::round(dx / cfg.box);
          rr += dx * dx;
        }
        if (rr > 9.0 * bump_w * bump_w) fb.values[i] = 0.0;
      }
      process(t, table, fb, true);
    }
    return pr;
  };

  PassResult main = run(base_grid(cfg), cfg.trials);
  PassResult fine = run(doubled_grid(cfg), sub);
  const double w1 = worst_under(main.records, sub);

  VerificationReport rep;
  rep.estimate_id = "sharp-oscillation";
  {
    std::ostringstream os;
    os << describe(cfg, sub) << "; alpha=" << scfg.alpha << " r=" << scfg.r
       << " kappas={";
    for (std::size_t i = 0; i < scfg.kappas.size(); ++i)
      os << (i ? "," : "") << scfg.kappas[i];
    os << "}; far trials use a bump at |x|=" << rho_c
       << " vanishing on B_" << vanish_radius;
    rep.ensemble_note = os.str();
  }
  rep.trials = std::move(main.records);
  rep.trials.insert(rep.trials.end(), fine.records.begin(),
                    fine.records.end());
  rep.worst_ratio = main.worst;
  rep.refinement_stable = refinement_ok(w1, fine.worst);
  rep.verdict =
      (std::isfinite(main.worst) && rep.refinement_stable && trend_ok)
          ? Verdict::Pass
          : Verdict::Fail;
  std::ostringstream d;
  d << "monitored constant = " << main.worst
    << "; far-regime sup of lhs/(kappa^-alpha group) = " << far_first_group_sup
    << "; kappa trend " << (trend_ok ? "ok" : "violated") << "; doubling "
    << w1 << " -> " << fine.worst;
  rep.diagnostic = d.str();
  return rep;
}

VerificationReport verify_operator_continuity(const EnsembleConfig& cfg) {
  gate_certificates(
      make_spec(cfg.d, cfg.kernel, trial_coefficient(cfg, 0), cfg.sigma,
                OperatorVariant::L),
      "operator continuity", cfg.sigma <= 1.0, false);
  const std::int64_t sub = std::min<std::int64_t>(cfg.trials, kRefineTrials);

  struct Extras {
    double sym_sup = 0.0;
    double p2_sup = 0.0;
    double extremal_ratio = 0.0;
    bool cross_ok = true;
  };

  auto run = [&cfg](const GridSpec& grid, std::int64_t trials, Extras& ex) {
    PassResult pr;
    const OperatorSpec specA = make_spec(cfg.d, cfg.kernel, coefficient_one(),
                                         cfg.sigma, OperatorVariant::A);
    const SymbolTable tableA =
        full_symbol(specA, grid, cfg.cancellation_certified);
    std::int64_t best_t = -1, best_k = -1;
    for (std::int64_t t = 0; t < trials; ++t) {
      const CoefficientField a = trial_coefficient(cfg, t);
      const OperatorSpec spec =
          make_spec(cfg.d, cfg.kernel, a, cfg.sigma, OperatorVariant::L);
      const SymbolTable table =
          full_symbol(spec, grid, cfg.cancellation_certified);
      const GridFunction u = trial_data(cfg, grid, t);
      const GridFunction Lu = apply_spectral(table, u);
      const GridFunction Au = apply_spectral(tableA, u);
      for (double p : cfg.ps) {
        const double den = lp_norm(Au, p);
        if (den < 1e-10) {
          pr.records.push_back(record(
              t, {{"p", p}, {"skipped", 1.0}, {"grid_n", double(grid.n)}}));
          continue;
        }
        const double ratio = lp_norm(Lu, p) / den;
        pr.records.push_back(record(t, {{"p", p},
                                        {"ratio", ratio},
                                        {"grid_n", double(grid.n)}}));
        pr.note(ratio);
        if (p == 2.0) ex.p2_sup = std::max(ex.p2_sup, ratio);
      }
      double s = 0.0;
      std::int64_t karg = -1;
      for (std::int64_t i = 0; i < grid.size(); ++i) {
        const double psi_i = -tableA.values[i].real();
        if (!(psi_i > 0.0)) continue;  // xi = 0 only
        const double r = std::abs(table.values[i]) / psi_i;
        if (r > s) {
          s = r;
          karg = i;
        }
      }
      pr.records.push_back(record(
          t, {{"symbol_sup", s}, {"extremal", 0.5}, {"grid_n", double(grid.n)}}));
      if (s > ex.sym_sup) {
        ex.sym_sup = s;
        best_t = t;
        best_k = karg;
      }
    }
    if (best_t >= 0 && best_k >= 0) {
      // single-mode probe at the arg-max frequency turns the p = 2 ratio
      // into the symbol ratio exactly
      const OperatorSpec spec =
          make_spec(cfg.d, cfg.kernel, trial_coefficient(cfg, best_t),
                    cfg.sigma, OperatorVariant::L);
      const SymbolTable table =
          full_symbol(spec, grid, cfg.cancellation_certified);
      int idx[3] = {0, 0, 0};
      grid.unflatten(best_k, idx);
      std::vector<double> xi(cfg.d, 0.0);
      for (int ax = 0; ax < cfg.d; ++ax)
        xi[ax] = grid.xi_of(grid.freq_index(idx[ax]));
      GridFunction ustar = zeros(grid);
      for (std::int64_t i = 0; i < grid.size(); ++i) {
        const std::vector<double> x = grid.point(i);
        double phase = 0.0;
        for (int ax = 0; ax < cfg.d; ++ax) phase += xi[ax] * x[ax];
        ustar.values[i] = std::cos(phase);
      }
      const GridFunction Lu = apply_spectral(table, ustar);
      const GridFunction Au = apply_spectral(tableA, ustar);
      ex.extremal_ratio = lp_norm(Lu, 2.0) / lp_norm(Au, 2.0);
      ex.p2_sup = std::max(ex.p2_sup, ex.extremal_ratio);
      pr.records.push_back(record(trials, {{"p", 2.0},
                                           {"ratio", ex.extremal_ratio},
                                           {"extremal", 1.0},
                                           {"grid_n", double(grid.n)}}));
      ex.cross_ok =
          std::abs(ex.p2_sup - ex.sym_sup) <= 1e-6 * std::abs(ex.sym_sup);
    }
    return pr;
  };

  Extras ex_main, ex_fine;
  PassResult main = run(base_grid(cfg), cfg.trials, ex_main);
  PassResult fine = run(doubled_grid(cfg), sub, ex_fine);
  const double w1 = worst_under(main.records, sub);

  VerificationReport rep;
  rep.estimate_id = "operator-continuity";
  rep.ensemble_note =
      describe(cfg, sub) +
      "; monitored ||Lu||_p/||Au||_p over band-limited u; records with "
      "extremal=1 are single-mode probes, extremal=0.5 carry symbol_sup";
  rep.trials = std::move(main.records);
  rep.trials.insert(rep.trials.end(), fine.records.begin(),
                    fine.records.end());
  rep.worst_ratio = std::max(main.worst, ex_main.extremal_ratio);
  rep.refinement_stable = refinement_ok(w1, fine.worst);
  rep.verdict = (std::isfinite(rep.worst_ratio) && rep.refinement_stable &&
                 ex_main.cross_ok && ex_fine.cross_ok)
                    ? Verdict::Pass
                    : Verdict::Fail;
  std::ostringstream d;
  d << "monitored constant = " << rep.worst_ratio
    << "; p=2 sup = " << ex_main.p2_sup << " vs symbol sup = "
    << ex_main.sym_sup << " (cross-check "
    << (ex_main.cross_ok && ex_fine.cross_ok ? "ok" : "FAILED")
    << "); doubling " << w1 << " -> " << fine.worst;
  rep.diagnostic = d.str();
  return rep;
}

}  // namespace nonloc
