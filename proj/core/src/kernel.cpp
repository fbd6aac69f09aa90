#include "nonloc/kernel.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "nonloc/quadrature.hpp"
#include "nonloc/symbol.hpp"

namespace nonloc {

namespace {

void require_unit_interval(double a, const char* what) {
  if (!(a > 0.0 && a < 1.0)) {
    std::ostringstream os;
    os << what << " must lie in (0,1), got " << a;
    throw std::invalid_argument(os.str());
  }
}

double log_cosh(double x) {
  x = std::abs(x);
  if (x > 20.0) return x - M_LN2 + std::log1p(std::exp(-2.0 * x));
  return std::log(std::cosh(x));
}

// log(sinh(x)/x), accurate near 0 and overflow-free for large x.
double log_sinh_over_x(double x) {
  if (x < 1e-4) return x * x / 6.0 - x * x * x * x / 180.0;
  if (x > 20.0) return x - std::log(2.0 * x) + std::log1p(-std::exp(-2.0 * x));
  return std::log(std::sinh(x) / x);
}

std::string join_params(const std::vector<double>& v) {
  std::ostringstream os;
  for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

// Log-log cubic Hermite table for expensive radial profiles.
struct ProfileTable {
  double log_r0 = 0.0;
  double step = 0.0;
  std::vector<double> log_j;
  std::vector<double> slope;

  double eval(double r) const {
    const double t = (std::log(r) - log_r0) / step;
    const int n = static_cast<int>(log_j.size());
    if (t <= 0.0) return std::exp(log_j.front() + slope.front() * t * step);
    if (t >= n - 1.0)
      return std::exp(log_j.back() + slope.back() * (t - (n - 1)) * step);
    const int i = static_cast<int>(t);
    const double s = t - i;
    const double y0 = log_j[i], y1 = log_j[i + 1];
    const double m0 = slope[i] * step, m1 = slope[i + 1] * step;
    const double s2 = s * s, s3 = s2 * s;
    const double v = (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * m0 +
                     (-2 * s3 + 3 * s2) * y1 + (s3 - s2) * m1;
    return std::exp(v);
  }
};

std::shared_ptr<ProfileTable> build_table(const Fn1& j, double r_lo,
                                          double r_hi, int per_decade) {
  auto table = std::make_shared<ProfileTable>();
  table->log_r0 = std::log(r_lo);
  const double decades = std::log10(r_hi / r_lo);
  const int n = static_cast<int>(decades * per_decade) + 2;
  table->step = (std::log(r_hi) - table->log_r0) / (n - 1);
  table->log_j.resize(n);
  for (int i = 0; i < n; ++i) {
    const double r = std::exp(table->log_r0 + i * table->step);
    const double v = j(r);
    if (!(v > 0.0) || !std::isfinite(v))
      throw std::runtime_error("subordinate kernel: nonpositive density at r");
    table->log_j[i] = std::log(v);
  }
  table->slope.resize(n);
  for (int i = 0; i < n; ++i) {
    if (i == 0)
      table->slope[i] = (table->log_j[1] - table->log_j[0]) / table->step;
    else if (i == n - 1)
      table->slope[i] = (table->log_j[n - 1] - table->log_j[n - 2]) / table->step;
    else
      table->slope[i] =
          (table->log_j[i + 1] - table->log_j[i - 1]) / (2.0 * table->step);
  }
  return table;
}

}  // namespace

BernsteinFunction bernstein_stable_sum(const std::vector<double>& alphas) {
  if (alphas.empty())
    throw std::invalid_argument("stable-sum needs at least one exponent");
  for (double a : alphas) require_unit_interval(a, "stable-sum exponent");
  BernsteinFunction phi;
  phi.family = "stable-sum";
  phi.alphas = alphas;
  phi.eval = [alphas](double lambda) {
    double s = 0.0;
    for (double a : alphas) s += std::pow(lambda, a);
    return s;
  };
  phi.sigma_hint = 2.0 * *std::max_element(alphas.begin(), alphas.end());
  phi.has_subordinator_density = true;
  std::vector<double> weights;
  weights.reserve(alphas.size());
  for (double a : alphas) weights.push_back(a / std::tgamma(1.0 - a));
  phi.rho = [alphas, weights](double t) {
    double s = 0.0;
    for (size_t i = 0; i < alphas.size(); ++i)
      s += weights[i] * std::pow(t, -1.0 - alphas[i]);
    return s;
  };
  return phi;
}

BernsteinFunction bernstein_plus_power(double alpha, double beta) {
  require_unit_interval(alpha, "plus-power alpha");
  require_unit_interval(beta, "plus-power beta");
  BernsteinFunction phi;
  phi.family = "plus-power";
  phi.alphas = {alpha};
  phi.beta = beta;
  phi.eval = [alpha, beta](double lambda) {
    return std::pow(lambda + std::pow(lambda, alpha), beta);
  };
  phi.sigma_hint = 2.0 * beta;
  return phi;
}

BernsteinFunction bernstein_log_up(double alpha, double beta) {
  require_unit_interval(alpha, "log-up alpha");
  if (!(beta > 0.0 && beta < 1.0 - alpha))
    throw std::invalid_argument("log-up beta must lie in (0, 1 - alpha)");
  BernsteinFunction phi;
  phi.family = "log-up";
  phi.alphas = {alpha};
  phi.beta = beta;
  phi.eval = [alpha, beta](double lambda) {
    return std::pow(lambda, alpha) * std::pow(std::log1p(lambda), beta);
  };
  phi.sigma_hint = 2.0 * alpha;
  return phi;
}

BernsteinFunction bernstein_log_down(double alpha, double beta) {
  require_unit_interval(alpha, "log-down alpha");
  if (!(beta > 0.0 && beta < alpha))
    throw std::invalid_argument("log-down beta must lie in (0, alpha)");
  BernsteinFunction phi;
  phi.family = "log-down";
  phi.alphas = {alpha};
  phi.beta = beta;
  phi.eval = [alpha, beta](double lambda) {
    return std::pow(lambda, alpha) * std::pow(std::log1p(lambda), -beta);
  };
  phi.sigma_hint = 2.0 * alpha;
  return phi;
}

BernsteinFunction bernstein_log_cosh(double alpha) {
  require_unit_interval(alpha, "log-cosh alpha");
  BernsteinFunction phi;
  phi.family = "log-cosh";
  phi.alphas = {alpha};
  phi.eval = [alpha](double lambda) {
    return std::pow(log_cosh(std::sqrt(lambda)), alpha);
  };
  phi.sigma_hint = alpha;
  return phi;
}

BernsteinFunction bernstein_log_sinh(double alpha) {
  require_unit_interval(alpha, "log-sinh alpha");
  BernsteinFunction phi;
  phi.family = "log-sinh";
  phi.alphas = {alpha};
  phi.eval = [alpha](double lambda) {
    return std::pow(log_sinh_over_x(std::sqrt(lambda)), alpha);
  };
  phi.sigma_hint = alpha;
  return phi;
}

double stable_normalization(int d, double alpha) {
  if (d < 1 || d > 3) throw std::invalid_argument("dimension must be 1, 2 or 3");
  if (!(alpha > 0.0 && alpha < 2.0))
    throw std::invalid_argument("stable exponent must lie in (0,2)");
  static std::map<std::pair<int, double>, double> cache;
  static std::mutex m;
  {
    std::lock_guard<std::mutex> lock(m);
    auto it = cache.find({d, alpha});
    if (it != cache.end()) return it->second;
  }
  RadialJumpKernel unit;
  unit.eval = [d, alpha](double r) { return std::pow(r, -d - alpha); };
  unit.family = KernelFamily::Stable;
  unit.alpha = alpha;
  unit.sigma = alpha;
  {
    std::ostringstream os;
    os.precision(17);
    os << "unit-power(d=" << d << ",a=" << alpha << ")";
    unit.label = os.str();
  }
  const double I = psi(unit, d, 1.0);
  if (!(I > 0.0) || !std::isfinite(I))
    throw std::runtime_error("stable normalization quadrature failed");
  const double c = 1.0 / I;
  std::lock_guard<std::mutex> lock(m);
  cache[{d, alpha}] = c;
  return c;
}

RadialJumpKernel stable_kernel(int d, double alpha) {
  const double c = stable_normalization(d, alpha);
  RadialJumpKernel k;
  const double p = d + alpha;
  k.eval = [c, p](double r) { return c * std::pow(r, -p); };
  k.family = KernelFamily::Stable;
  k.sigma = alpha;
  k.alpha = alpha;
  std::ostringstream os;
  os << "stable(d=" << d << ",alpha=" << alpha << ")";
  k.label = os.str();
  return k;
}

RadialJumpKernel subordinate_kernel(const BernsteinFunction& phi, int d,
                                    const SubordinateQuadrature& quad) {
  if (d < 1 || d > 3) throw std::invalid_argument("dimension must be 1, 2 or 3");
  if (!phi.has_subordinator_density)
    throw std::invalid_argument(
        "subordinate_kernel: family '" + phi.family +
        "' has no analytic subordinator density; not supported");
  const auto rho = phi.rho;
  const double half_d = 0.5 * d;
  auto j_exact = [rho, half_d, d, quad](double r) {
    auto g = [&](double t) {
      return std::pow(4.0 * M_PI * t, -half_d) * std::exp(-r * r / (4.0 * t)) *
             rho(t);
    };
    const double t0 = r * r / (4.0 * (half_d + 1.0));
    TailIntegral up = integrate_octaves_up(g, t0, quad.rel_tol, 1200, quad.order);
    TailIntegral down =
        integrate_octaves_down(g, t0, quad.rel_tol, 1200, quad.order);
    return up.value + down.value;
  };
  auto table = build_table(j_exact, 1e-10, 1e10, 64);
  RadialJumpKernel k;
  k.eval = [table](double r) { return table->eval(r); };
  k.family = KernelFamily::Subordinate;
  k.sigma = phi.sigma_hint;
  std::ostringstream os;
  os << "subordinate(" << phi.family << ";" << join_params(phi.alphas);
  if (phi.beta != 0.0) os << ";b=" << phi.beta;
  os << ";d=" << d << ")";
  k.label = os.str();
  return k;
}

RadialJumpKernel model_kernel(const BernsteinFunction& phi, int d) {
  if (d < 1 || d > 3) throw std::invalid_argument("dimension must be 1, 2 or 3");
  auto eval_phi = phi.eval;
  RadialJumpKernel k;
  k.eval = [eval_phi, d](double r) {
    const double lam = 1.0 / (r * r);
    if (lam == 0.0 || !std::isfinite(lam)) return 0.0;
    return std::pow(r, -d) * eval_phi(lam);
  };
  k.family = KernelFamily::Model;
  k.sigma = phi.sigma_hint;
  std::ostringstream os;
  os << "model(" << phi.family << ";" << join_params(phi.alphas);
  if (phi.beta != 0.0) os << ";b=" << phi.beta;
  os << ";d=" << d << ")";
  k.label = os.str();
  return k;
}

RadialJumpKernel custom_kernel(std::function<double(double)> j,
                               std::optional<double> sigma, std::string label) {
  static std::atomic<int> counter{0};
  RadialJumpKernel k;
  k.eval = std::move(j);
  k.family = KernelFamily::Custom;
  k.sigma = sigma;
  k.label = label + "#" + std::to_string(counter.fetch_add(1));
  return k;
}

}  // namespace nonloc
