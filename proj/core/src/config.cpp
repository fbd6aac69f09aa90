// Config ingestion and the batch front-end dispatcher.  Every artifact is
// deterministic given (config, seed): JSON through dump_deterministic, CSV
// through the same %.17g formatting, RNG streams derived from the config
// seed.

#include "nonloc/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nonloc/fieldops.hpp"
#include "nonloc/grid_io.hpp"
#include "nonloc/hypothesis.hpp"
#include "nonloc/report_json.hpp"
#include "nonloc/solver.hpp"
#include "nonloc/symbol.hpp"
#include "nonloc/verify.hpp"

namespace nonloc {

namespace {

using json = nlohmann::json;

[[noreturn]] void bad(const std::string& path, const std::string& what) {
  throw std::invalid_argument("config: " + path + ": " + what);
}

std::string fmt17(double v) {
  if (!std::isfinite(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void check_keys(const json& sec, const std::string& prefix,
                const std::set<std::string>& allowed) {
  for (auto it = sec.begin(); it != sec.end(); ++it)
    if (!allowed.count(it.key()))
      bad(prefix + "." + it.key(), "unknown field");
}

double num_field(const json& s, const std::string& p, const char* k,
                 double def) {
  if (!s.contains(k)) return def;
  if (!s.at(k).is_number()) bad(p + "." + k, "must be a number");
  return s.at(k).get<double>();
}

int int_field(const json& s, const std::string& p, const char* k, int def) {
  if (!s.contains(k)) return def;
  if (!s.at(k).is_number_integer()) bad(p + "." + k, "must be an integer");
  return s.at(k).get<int>();
}

std::int64_t i64_field(const json& s, const std::string& p, const char* k,
                       std::int64_t def) {
  if (!s.contains(k)) return def;
  if (!s.at(k).is_number_integer()) bad(p + "." + k, "must be an integer");
  return s.at(k).get<std::int64_t>();
}

std::uint64_t u64_field(const json& s, const std::string& p, const char* k,
                        std::uint64_t def) {
  if (!s.contains(k)) return def;
  const json& v = s.at(k);
  if (!(v.is_number_unsigned() ||
        (v.is_number_integer() && v.get<std::int64_t>() >= 0)))
    bad(p + "." + k, "must be a non-negative integer");
  return v.get<std::uint64_t>();
}

bool bool_field(const json& s, const std::string& p, const char* k, bool def) {
  if (!s.contains(k)) return def;
  if (!s.at(k).is_boolean()) bad(p + "." + k, "must be a boolean");
  return s.at(k).get<bool>();
}

std::string str_field(const json& s, const std::string& p, const char* k,
                      const std::string& def) {
  if (!s.contains(k)) return def;
  if (!s.at(k).is_string()) bad(p + "." + k, "must be a string");
  return s.at(k).get<std::string>();
}

std::vector<double> numlist_field(const json& s, const std::string& p,
                                  const char* k,
                                  const std::vector<double>& def) {
  if (!s.contains(k)) return def;
  const json& v = s.at(k);
  if (!v.is_array()) bad(p + "." + k, "must be an array of numbers");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) bad(p + "." + k, "must be an array of numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

void validate_config(const RunConfig& cfg) {
  const std::set<std::string> kernel_families = {"stable", "subordinate",
                                                 "model", "power"};
  if (!kernel_families.count(cfg.kernel.family))
    bad("kernel.family", "unknown family '" + cfg.kernel.family +
                             "' (expected stable | subordinate | model | "
                             "power)");
  if (!(cfg.kernel.alpha > 0.0)) bad("kernel.alpha", "must be > 0");
  const std::set<std::string> coef_families = {
      "one",          "constant",       "signed-halfspace",
      "indicator-halfspace", "cosine-angular", "random"};
  if (!coef_families.count(cfg.coefficient.family))
    bad("coefficient.family",
        "unknown family '" + cfg.coefficient.family +
            "' (expected one | constant | signed-halfspace | "
            "indicator-halfspace | cosine-angular | random)");
  if (!(cfg.coefficient.nu <= cfg.coefficient.Lambda))
    bad("coefficient.nu", "must satisfy nu <= Lambda");
  if (cfg.grid.d < 1 || cfg.grid.d > 3) bad("grid.d", "must be 1, 2, or 3");
  if (!power_of_two(cfg.grid.n)) bad("grid.n", "must be a power of two");
  if (!(cfg.grid.box > 0.0)) bad("grid.box", "must be > 0");
  if (cfg.solve.lambdas.empty()) bad("solve.lambdas", "must be non-empty");
  for (double l : cfg.solve.lambdas)
    if (!(l > 0.0)) bad("solve.lambdas", "entries must be > 0");
  for (double p : cfg.solve.ps)
    if (!(p >= 1.0)) bad("solve.ps", "entries must be >= 1");
  const std::set<std::string> variants = {"L", "L-tilde", "A", "L-star",
                                          "L-tilde-star"};
  if (!variants.count(cfg.solve.variant))
    bad("solve.variant", "unknown variant '" + cfg.solve.variant +
                             "' (expected L | L-tilde | A | L-star | "
                             "L-tilde-star)");
}

BernsteinFunction phi_from_config(const KernelConfig& kc) {
  const std::string& f = kc.phi_family;
  if (kc.phi_alphas.empty())
    bad("kernel.phi_alphas", "must be a non-empty array");
  const double a0 = kc.phi_alphas.front();
  if (f == "stable-sum") return bernstein_stable_sum(kc.phi_alphas);
  if (f == "plus-power") return bernstein_plus_power(a0, kc.phi_beta);
  if (f == "log-up") return bernstein_log_up(a0, kc.phi_beta);
  if (f == "log-down") return bernstein_log_down(a0, kc.phi_beta);
  if (f == "log-cosh") return bernstein_log_cosh(a0);
  if (f == "log-sinh") return bernstein_log_sinh(a0);
  bad("kernel.phi_family",
      "unknown family '" + f +
          "' (expected stable-sum | plus-power | log-up | log-down | "
          "log-cosh | log-sinh)");
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, ','))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace

RunConfig parse_config_json(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const std::exception& e) {
    bad("$", std::string("parse error: ") + e.what());
  }
  if (!root.is_object()) bad("$", "must be a JSON object");
  check_keys(root, "$",
             {"kernel", "coefficient", "grid", "solve", "suites", "out_dir",
              "seed"});

  RunConfig cfg;
  if (root.contains("kernel")) {
    const json& s = root.at("kernel");
    if (!s.is_object()) bad("kernel", "must be an object");
    check_keys(s, "kernel",
               {"family", "alpha", "phi_family", "phi_alphas", "phi_beta"});
    cfg.kernel.family = str_field(s, "kernel", "family", cfg.kernel.family);
    cfg.kernel.alpha = num_field(s, "kernel", "alpha", cfg.kernel.alpha);
    cfg.kernel.phi_family =
        str_field(s, "kernel", "phi_family", cfg.kernel.phi_family);
    cfg.kernel.phi_alphas =
        numlist_field(s, "kernel", "phi_alphas", cfg.kernel.phi_alphas);
    cfg.kernel.phi_beta =
        num_field(s, "kernel", "phi_beta", cfg.kernel.phi_beta);
  }
  if (root.contains("coefficient")) {
    const json& s = root.at("coefficient");
    if (!s.is_object()) bad("coefficient", "must be an object");
    check_keys(s, "coefficient",
               {"family", "value", "base", "amp", "nu", "Lambda", "seed",
                "even_inside", "even_outside", "fully_even"});
    auto& cc = cfg.coefficient;
    cc.family = str_field(s, "coefficient", "family", cc.family);
    cc.value = num_field(s, "coefficient", "value", cc.value);
    cc.base = num_field(s, "coefficient", "base", cc.base);
    cc.amp = num_field(s, "coefficient", "amp", cc.amp);
    cc.nu = num_field(s, "coefficient", "nu", cc.nu);
    cc.Lambda = num_field(s, "coefficient", "Lambda", cc.Lambda);
    cc.seed = u64_field(s, "coefficient", "seed", cc.seed);
    cc.even_inside = bool_field(s, "coefficient", "even_inside", cc.even_inside);
    cc.even_outside =
        bool_field(s, "coefficient", "even_outside", cc.even_outside);
    cc.fully_even = bool_field(s, "coefficient", "fully_even", cc.fully_even);
  }
  if (root.contains("grid")) {
    const json& s = root.at("grid");
    if (!s.is_object()) bad("grid", "must be an object");
    check_keys(s, "grid", {"d", "n", "box"});
    cfg.grid.d = int_field(s, "grid", "d", cfg.grid.d);
    cfg.grid.n = int_field(s, "grid", "n", cfg.grid.n);
    cfg.grid.box = num_field(s, "grid", "box", cfg.grid.box);
  }
  if (root.contains("solve")) {
    const json& s = root.at("solve");
    if (!s.is_object()) bad("solve", "must be an object");
    check_keys(s, "solve",
               {"lambdas", "ps", "variant", "f_profile", "bump_width",
                "mc_paths"});
    auto& sc = cfg.solve;
    sc.lambdas = numlist_field(s, "solve", "lambdas", sc.lambdas);
    sc.ps = numlist_field(s, "solve", "ps", sc.ps);
    sc.variant = str_field(s, "solve", "variant", sc.variant);
    sc.f_profile = str_field(s, "solve", "f_profile", sc.f_profile);
    sc.bump_width = num_field(s, "solve", "bump_width", sc.bump_width);
    sc.mc_paths = i64_field(s, "solve", "mc_paths", sc.mc_paths);
  }
  if (root.contains("suites")) {
    const json& s = root.at("suites");
    if (!s.is_array()) bad("suites", "must be an array of strings");
    cfg.suites.clear();
    for (const auto& e : s) {
      if (!e.is_string()) bad("suites", "must be an array of strings");
      cfg.suites.push_back(e.get<std::string>());
    }
  }
  if (root.contains("out_dir")) {
    if (!root.at("out_dir").is_string()) bad("out_dir", "must be a string");
    cfg.out_dir = root.at("out_dir").get<std::string>();
  }
  cfg.seed = u64_field(root, "$", "seed", cfg.seed);

  validate_config(cfg);
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) bad("$", "cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << is.rdbuf();
  return parse_config_json(ss.str());
}

std::string serialize_config(const RunConfig& cfg) {
  ordered_json j;
  ordered_json k;
  k["family"] = cfg.kernel.family;
  k["alpha"] = cfg.kernel.alpha;
  k["phi_family"] = cfg.kernel.phi_family;
  k["phi_alphas"] = cfg.kernel.phi_alphas;
  k["phi_beta"] = cfg.kernel.phi_beta;
  j["kernel"] = k;
  ordered_json c;
  c["family"] = cfg.coefficient.family;
  c["value"] = cfg.coefficient.value;
  c["base"] = cfg.coefficient.base;
  c["amp"] = cfg.coefficient.amp;
  c["nu"] = cfg.coefficient.nu;
  c["Lambda"] = cfg.coefficient.Lambda;
  c["seed"] = cfg.coefficient.seed;
  c["even_inside"] = cfg.coefficient.even_inside;
  c["even_outside"] = cfg.coefficient.even_outside;
  c["fully_even"] = cfg.coefficient.fully_even;
  j["coefficient"] = c;
  ordered_json g;
  g["d"] = cfg.grid.d;
  g["n"] = cfg.grid.n;
  g["box"] = cfg.grid.box;
  j["grid"] = g;
  ordered_json s;
  s["lambdas"] = cfg.solve.lambdas;
  s["ps"] = cfg.solve.ps;
  s["variant"] = cfg.solve.variant;
  s["f_profile"] = cfg.solve.f_profile;
  s["bump_width"] = cfg.solve.bump_width;
  s["mc_paths"] = cfg.solve.mc_paths;
  j["solve"] = s;
  j["suites"] = cfg.suites;
  j["out_dir"] = cfg.out_dir;
  j["seed"] = cfg.seed;
  return dump_deterministic(j);
}

RadialJumpKernel kernel_from_config(const KernelConfig& cfg, int d) {
  if (cfg.family == "stable") return stable_kernel(d, cfg.alpha);
  if (cfg.family == "subordinate")
    return subordinate_kernel(phi_from_config(cfg), d);
  if (cfg.family == "model") return model_kernel(phi_from_config(cfg), d);
  if (cfg.family == "power") {
    const double p = cfg.alpha;
    if (!(p > 0.0) || !(p < 2.0)) bad("kernel.alpha", "power p must lie in (0, 2)");
    char label[64];
    std::snprintf(label, sizeof(label), "power(d=%d,p=%g)", d, p);
    return custom_kernel(
        [d, p](double r) { return std::pow(r, -double(d) - p); }, p, label);
  }
  bad("kernel.family", "unknown family '" + cfg.family + "'");
}

CoefficientField coefficient_from_config(const CoefficientConfig& cfg, int d) {
  if (cfg.family == "one") return coefficient_one();
  if (cfg.family == "constant") return coefficient_constant(cfg.value);
  if (cfg.family == "signed-halfspace")
    return coefficient_signed_halfspace(cfg.base, cfg.amp);
  if (cfg.family == "indicator-halfspace")
    return coefficient_indicator_halfspace(cfg.base, cfg.amp);
  if (cfg.family == "cosine-angular") {
    if (d != 2) bad("coefficient.family", "cosine-angular needs grid.d = 2");
    return coefficient_cosine_angular(cfg.base, cfg.amp);
  }
  if (cfg.family == "random") {
    RandomCoefficientOptions opt;
    opt.nu = cfg.nu;
    opt.Lambda = cfg.Lambda;
    opt.even_inside_unit_ball = cfg.even_inside;
    opt.even_outside_unit_ball = cfg.even_outside;
    opt.fully_even = cfg.fully_even;
    return coefficient_random(d, cfg.seed, opt);
  }
  bad("coefficient.family", "unknown family '" + cfg.family + "'");
}

OperatorSpec spec_from_config(const RunConfig& cfg) {
  const RadialJumpKernel kernel = kernel_from_config(cfg.kernel, cfg.grid.d);
  const CoefficientField a = coefficient_from_config(cfg.coefficient, cfg.grid.d);
  const double sigma =
      kernel.sigma ? *kernel.sigma : estimate_sigma(kernel, cfg.grid.d).sigma;
  OperatorVariant v = OperatorVariant::L;
  if (cfg.solve.variant == "L-tilde") v = OperatorVariant::LTilde;
  else if (cfg.solve.variant == "A") v = OperatorVariant::A;
  else if (cfg.solve.variant == "L-star") v = OperatorVariant::LStar;
  else if (cfg.solve.variant == "L-tilde-star") v = OperatorVariant::LTildeStar;
  return make_spec(cfg.grid.d, kernel, a, sigma, v);
}

namespace {

GridSpec grid_from(const RunConfig& cfg) {
  return GridSpec{cfg.grid.d, cfg.grid.n, cfg.grid.box};
}

std::filesystem::path artifact(const RunConfig& cfg, const std::string& name) {
  return std::filesystem::path(cfg.out_dir) / name;
}

// At order one every build needs the cancellation certificate in hand; away
// from it the flag is vacuous.
bool cancellation_flag(const OperatorSpec& spec) {
  if (spec.sigma != 1.0) return false;
  const CertificateSet cs = certify(spec);
  if (!cs.passed("CANCEL"))
    throw std::runtime_error(
        "the CANCEL certificate did not pass for this spec; order-one builds "
        "are refused");
  return true;
}

GridFunction data_profile(const RunConfig& cfg, const GridSpec& g) {
  const std::string& prof = cfg.solve.f_profile;
  if (prof == "gaussian-bump")
    return gaussian_bump(g, std::vector<double>(g.d, 0.0),
                         cfg.solve.bump_width, 1.0);
  if (prof == "band-limited") return random_band_limited(g, cfg.seed);
  if (prof == "single-mode") {
    GridFunction u = zeros(g);
    const double xi1 = g.xi_of(1);
    for (std::int64_t i = 0; i < g.size(); ++i)
      u.values[i] = std::cos(xi1 * g.point(i)[0]);
    return u;
  }
  GridFunction u = read_grid_function(prof);
  if (!(u.grid == g))
    throw std::runtime_error("solve: data file grid (d=" +
                             std::to_string(u.grid.d) + ", n=" +
                             std::to_string(u.grid.n) +
                             ") does not match the config grid");
  return u;
}

int run_kernel_check(const RunConfig& cfg) {
  const OperatorSpec spec = spec_from_config(cfg);
  const CertificateSet cs = certify(spec);
  write_json_file(artifact(cfg, "certificates.json").string(), to_json(cs));
  // exit gates on the certificates the configured operator actually needs;
  // the tail-domination clause is reported but advisory
  std::vector<std::string> required = {"LEVY", "SIGMA", "H1", "H2"};
  if (spec.sigma == 1.0) required.push_back("CANCEL");
  const bool drift = spec.variant == OperatorVariant::LTilde ||
                     spec.variant == OperatorVariant::LTildeStar;
  if (drift && spec.sigma < 1.0) required.push_back("H3ii");
  if (drift && spec.sigma > 1.0) required.push_back("H3iv");
  int status = 0;
  for (const auto& c : cs.items) {
    const bool gating =
        std::find(required.begin(), required.end(), c.id) != required.end();
    std::printf("%-8s %-12s%s%s\n", c.id.c_str(),
                verdict_name(c.verdict).c_str(), gating ? "" : " (advisory)",
                c.diagnostic.empty() ? "" : (" - " + c.diagnostic).c_str());
    if (gating && !c.passed()) status = 1;
  }
  std::printf("wrote %s\n", artifact(cfg, "certificates.json").c_str());
  return status;
}

int run_symbol_dump(const RunConfig& cfg) {
  const OperatorSpec spec = spec_from_config(cfg);
  const GridSpec g = grid_from(cfg);
  const bool certified = cancellation_flag(spec);
  const SymbolTable table = full_symbol(spec, g, certified);
  const OperatorSpec specA =
      make_spec(g.d, spec.kernel, coefficient_one(), spec.sigma,
                OperatorVariant::A);
  const SymbolTable tableA = full_symbol(specA, g, certified);

  const auto path = artifact(cfg, "symbol.csv");
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path.string());
  os << "# symbol of variant " << variant_name(spec.variant) << " for "
     << spec.kernel.label << " with coefficient " << spec.coefficient.label
     << "; psi is the reference symbol with a == 1\n";
  os << "index";
  for (int a = 0; a < g.d; ++a) os << ",k" << a;
  os << ",xi_abs,re_m,im_m,psi\n";
  int idx[3] = {0, 0, 0};
  for (std::int64_t i = 0; i < g.size(); ++i) {
    g.unflatten(i, idx);
    double q2 = 0.0;
    os << i;
    for (int a = 0; a < g.d; ++a) {
      const int k = g.freq_index(idx[a]);
      const double xi = g.xi_of(k);
      q2 += xi * xi;
      os << "," << k;
    }
    const double psi_v =
        tableA.values[i].real() == 0.0 ? 0.0 : -tableA.values[i].real();
    os << "," << fmt17(std::sqrt(q2)) << ","
       << fmt17(table.values[i].real()) << ","
       << fmt17(table.values[i].imag()) << "," << fmt17(psi_v) << "\n";
  }
  if (!os) throw std::runtime_error("write failed: " + path.string());
  std::printf("wrote %s (%lld rows)\n", path.c_str(),
              static_cast<long long>(g.size()));
  return 0;
}

int run_solve(const RunConfig& cfg) {
  const OperatorSpec spec = spec_from_config(cfg);
  const GridSpec g = grid_from(cfg);
  const bool certified = cancellation_flag(spec);
  const SymbolTable table = full_symbol(spec, g, certified);
  const GridFunction f = data_profile(cfg, g);
  write_grid_function(artifact(cfg, "f.json").string(), f);

  ordered_json entries = ordered_json::array();
  int status = 0;
  for (double lambda : cfg.solve.lambdas) {
    const SolveResult sol = resolvent_solve(table, f, lambda);
    char name[64];
    std::snprintf(name, sizeof(name), "u_lambda%g.json", lambda);
    write_grid_function(artifact(cfg, name).string(), sol.u);
    ordered_json e = to_json(sol);
    e["lambda"] = lambda;
    e["file"] = name;
    ordered_json norms;
    for (double p : cfg.solve.ps) {
      char key[32];
      std::snprintf(key, sizeof(key), "p=%g", p);
      ordered_json pair;
      pair["u"] = lp_norm(sol.u, p);
      pair["f"] = lp_norm(f, p);
      norms[key] = pair;
    }
    e["norms"] = norms;
    entries.push_back(std::move(e));
    if (!(sol.residual <= 1e-10)) status = 1;
    std::printf("lambda=%g residual=%.3e -> %s\n", lambda, sol.residual, name);
  }
  ordered_json rep;
  rep["variant"] = variant_name(spec.variant);
  rep["kernel"] = spec.kernel.label;
  rep["coefficient"] = spec.coefficient.label;
  rep["f_profile"] = cfg.solve.f_profile;
  rep["solves"] = entries;
  write_json_file(artifact(cfg, "solve.json").string(), rep);
  return status;
}

void write_trials_csv(const std::filesystem::path& path,
                      const VerificationReport& rep) {
  std::set<std::string> keys;
  for (const auto& t : rep.trials)
    for (const auto& [k, v] : t.quantities) {
      (void)v;
      keys.insert(k);
    }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path.string());
  os << "# per-trial quantities for " << rep.estimate_id << "\n";
  os << "trial";
  for (const auto& k : keys) os << "," << k;
  os << "\n";
  for (const auto& t : rep.trials) {
    os << t.trial;
    for (const auto& k : keys) {
      os << ",";
      auto it = t.quantities.find(k);
      if (it != t.quantities.end()) os << fmt17(it->second);
    }
    os << "\n";
  }
  if (!os) throw std::runtime_error("write failed: " + path.string());
}

int run_verify(const RunConfig& cfg) {
  const auto& family = cfg.coefficient.family;
  if (family != "one" && family != "random")
    bad("coefficient.family",
        "verify ensembles draw per-trial coefficients; use 'one' or 'random'");

  EnsembleConfig e;
  e.d = cfg.grid.d;
  e.n = cfg.grid.n;
  e.box = cfg.grid.box;
  e.base_seed = cfg.seed;
  e.kernel = kernel_from_config(cfg.kernel, cfg.grid.d);
  e.sigma = e.kernel.sigma ? *e.kernel.sigma
                           : estimate_sigma(e.kernel, cfg.grid.d).sigma;
  e.random_coefficient = family == "random";
  e.nu = e.random_coefficient ? cfg.coefficient.nu : 1.0;
  e.Lambda = e.random_coefficient ? cfg.coefficient.Lambda : 1.0;
  if (e.sigma == 1.0) {
    const OperatorSpec probe = make_spec(
        e.d, e.kernel, coefficient_one(), e.sigma, OperatorVariant::L);
    e.cancellation_certified = certify(probe).passed("CANCEL");
  }

  std::vector<std::string> suites = cfg.suites;
  if (suites.empty())
    suites = {"resolvent-bound", "L2",        "Lp",        "positivity",
              "holder",          "sharp-oscillation", "continuity"};

  int status = 0;
  for (const std::string& name : suites) {
    VerificationReport rep;
    if (name == "resolvent-bound") {
      rep = verify_resolvent_bound(e);
    } else if (name == "L2") {
      rep = verify_L2(e);
    } else if (name == "Lp") {
      rep = verify_Lp(e);
    } else if (name == "positivity") {
      rep = verify_positivity_max_principle(e);
    } else if (name == "holder") {
      HolderSuiteConfig h;
      h.base = e;
      h.base.trials = std::min(e.trials, 20);
      rep = verify_holder(h);
    } else if (name == "sharp-oscillation") {
      SharpOscillationConfig s;
      s.base = e;
      s.base.trials = std::min(e.trials, 20);
      rep = verify_sharp_oscillation(s);
    } else if (name == "continuity") {
      rep = verify_operator_continuity(e);
    } else {
      bad("suites",
          "unknown suite '" + name +
              "' (expected resolvent-bound | L2 | Lp | positivity | holder "
              "| sharp-oscillation | continuity)");
    }
    write_json_file(artifact(cfg, "verify_" + name + ".json").string(),
                    to_json(rep));
    write_trials_csv(artifact(cfg, "verify_" + name + ".csv"), rep);
    std::printf("%-22s %-5s worst=%.6g %s\n", rep.estimate_id.c_str(),
                verdict_name(rep.verdict).c_str(), rep.worst_ratio,
                rep.refinement_stable ? "" : "(refinement unstable)");
    if (!rep.passed()) status = 1;
  }
  return status;
}

int run_mc(const RunConfig& cfg) {
  if (cfg.kernel.family != "stable")
    bad("kernel.family", "mc compares against the stable process; use the "
                         "stable family");
  const bool unit_coefficient =
      cfg.coefficient.family == "one" ||
      (cfg.coefficient.family == "constant" && cfg.coefficient.value == 1.0);
  if (!unit_coefficient)
    bad("coefficient.family",
        "mc compares against the constant-coefficient resolvent; use 'one'");
  if (cfg.solve.f_profile != "gaussian-bump")
    bad("solve.f_profile", "mc needs the gaussian-bump profile");

  const GridSpec g = grid_from(cfg);
  const OperatorSpec spec = spec_from_config(cfg);
  const bool certified = cancellation_flag(spec);
  const SymbolTable table = full_symbol(spec, g, certified);
  const GridFunction f = data_profile(cfg, g);
  const double lambda = cfg.solve.lambdas.front();
  const SolveResult sol = resolvent_solve(table, f, lambda);

  // probes on exact lattice points along the first axis
  std::vector<std::int64_t> flats;
  for (int off : {0, g.n / 16, g.n / 8}) {
    int idx[3] = {0, 0, 0};
    for (int a = 0; a < g.d; ++a) idx[a] = g.n / 2;
    idx[0] = g.n / 2 + off;
    flats.push_back(g.flatten(idx));
  }
  std::vector<std::vector<double>> probes;
  for (auto i : flats) probes.push_back(g.point(i));

  const double w = cfg.solve.bump_width;
  auto f_free = [w](const std::vector<double>& x) {
    double r2 = 0.0;
    for (double v : x) r2 += v * v;
    return std::exp(-r2 / (2.0 * w * w));
  };
  FeynmanKacOptions fo;
  fo.paths = cfg.solve.mc_paths;
  fo.seed = cfg.seed;
  const FeynmanKacResult mc =
      feynman_kac_mc(cfg.kernel.alpha, g.d, f_free, lambda, probes, fo);

  // torus-vs-free-space discrepancy: the resolvent tail is kernel-comparable,
  // so nearest images are bounded by j(box/2) ||f||_1 / lambda per direction
  const double period_bound =
      6.0 * g.d * spec.kernel(g.box / 2.0) * lp_norm(f, 1.0) / lambda;

  ordered_json rows = ordered_json::array();
  int status = 0;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    const double ref = sol.u.values[flats[i]];
    const double err = std::abs(mc.estimate[i] - ref);
    const double tol = 3.5 * mc.standard_error[i] + period_bound;
    const bool ok = err <= tol;
    if (!ok) status = 1;
    ordered_json r;
    r["x"] = probes[i];
    r["estimate"] = mc.estimate[i];
    r["standard_error"] = mc.standard_error[i];
    r["reference"] = ref;
    r["abs_err"] = err;
    r["tolerance"] = tol;
    r["pass"] = ok;
    rows.push_back(std::move(r));
    std::printf("x0=%+.4f mc=%+.6f ref=%+.6f err=%.2e tol=%.2e %s\n",
                probes[i][0], mc.estimate[i], ref, err, tol,
                ok ? "ok" : "FAIL");
  }
  ordered_json rep;
  rep["alpha"] = cfg.kernel.alpha;
  rep["lambda"] = lambda;
  rep["paths"] = mc.paths;
  rep["seed"] = mc.seed;
  rep["period_bound"] = period_bound;
  rep["probes"] = rows;
  rep["all_passed"] = status == 0;
  write_json_file(artifact(cfg, "mc.json").string(), rep);
  return status;
}

}  // namespace

int run(const std::string& subcommand, const std::string& config_path,
        const CliOverrides& overrides) {
  try {
    RunConfig cfg = parse_config_file(config_path);
    if (overrides.out) cfg.out_dir = *overrides.out;
    if (overrides.seed) cfg.seed = *overrides.seed;
    if (overrides.grid_n) cfg.grid.n = *overrides.grid_n;
    if (overrides.grid_box) cfg.grid.box = *overrides.grid_box;
    if (overrides.suites) cfg.suites = split_csv(*overrides.suites);
    validate_config(cfg);
    std::filesystem::create_directories(cfg.out_dir);

    if (subcommand == "kernel-check") return run_kernel_check(cfg);
    if (subcommand == "symbol-dump") return run_symbol_dump(cfg);
    if (subcommand == "solve") return run_solve(cfg);
    if (subcommand == "verify") return run_verify(cfg);
    if (subcommand == "mc") return run_mc(cfg);
    std::fprintf(stderr,
                 "unknown subcommand '%s' (expected kernel-check | "
                 "symbol-dump | solve | verify | mc)\n",
                 subcommand.c_str());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}

}  // namespace nonloc
