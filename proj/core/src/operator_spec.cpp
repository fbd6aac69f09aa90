#include "nonloc/operator_spec.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "nonloc/quadrature.hpp"

namespace nonloc {

ChiRegime chi_regime_for(double sigma) {
  if (!(sigma > 0.0 && sigma <= 2.0))
    throw std::invalid_argument("order parameter must lie in (0, 2]");
  if (sigma < 1.0) return ChiRegime::None;
  if (sigma == 1.0) return ChiRegime::UnitBall;
  return ChiRegime::Full;
}

std::string variant_name(OperatorVariant v) {
  switch (v) {
    case OperatorVariant::L: return "L";
    case OperatorVariant::LTilde: return "L-tilde";
    case OperatorVariant::A: return "A";
    case OperatorVariant::LStar: return "L-star";
    case OperatorVariant::LTildeStar: return "L-tilde-star";
  }
  return "?";
}

double OperatorSpec::K(const std::vector<double>& y) const {
  double r2 = 0.0;
  for (double c : y) r2 += c * c;
  const double r = std::sqrt(r2);
  const double j = kernel(r);
  if (!reflected()) return coefficient(y) * j;
  std::vector<double> neg(y.size());
  for (size_t i = 0; i < y.size(); ++i) neg[i] = -y[i];
  return coefficient(neg) * j;
}

double OperatorSpec::chi_at(double r) const {
  if (variant == OperatorVariant::LTilde || variant == OperatorVariant::LTildeStar)
    return r < 1.0 ? 1.0 : 0.0;
  switch (chi) {
    case ChiRegime::None: return 0.0;
    case ChiRegime::UnitBall: return r < 1.0 ? 1.0 : 0.0;
    case ChiRegime::Full: return 1.0;
  }
  return 0.0;
}

OperatorSpec make_spec(int d, RadialJumpKernel kernel,
                       CoefficientField coefficient, double sigma,
                       OperatorVariant variant) {
  if (d < 1 || d > 3) throw std::invalid_argument("dimension must be 1, 2 or 3");
  if (variant == OperatorVariant::A && coefficient.label != "one")
    throw std::invalid_argument("variant A requires the unit coefficient");
  OperatorSpec spec;
  spec.d = d;
  spec.kernel = std::move(kernel);
  spec.coefficient = std::move(coefficient);
  spec.sigma = sigma;
  spec.chi = chi_regime_for(sigma);
  spec.variant = variant;
  return spec;
}

KernelSplit kernel_split(const OperatorSpec& spec) {
  if (spec.variant == OperatorVariant::A)
    throw std::invalid_argument("kernel split applies to L and L-tilde variants");
  OperatorSpec copy = spec;
  KernelSplit split;
  split.K1 = [copy](const std::vector<double>& y) {
    std::vector<double> neg(y.size());
    for (size_t i = 0; i < y.size(); ++i) neg[i] = -y[i];
    return std::min(copy.K(y), copy.K(neg));
  };
  split.K2 = [copy](const std::vector<double>& y) {
    std::vector<double> neg(y.size());
    for (size_t i = 0; i < y.size(); ++i) neg[i] = -y[i];
    const double k = copy.K(y);
    return k - std::min(k, copy.K(neg));
  };
  return split;
}

namespace {

// int over the sphere of theta_i f(r theta) dtheta, one component.
double angular_first_moment(const OperatorSpec& spec, double r, int i,
                            const DriftQuadrature& quad) {
  const int d = spec.d;
  if (d == 1) {
    return spec.K({r}) - spec.K({-r});
  }
  if (d == 2) {
    const int n = quad.angular_points;
    double acc = 0.0;
    for (int k = 0; k < n; ++k) {
      const double th = 2.0 * M_PI * (k + 0.5) / n;
      const double c = std::cos(th), s = std::sin(th);
      acc += (i == 0 ? c : s) * spec.K({r * c, r * s});
    }
    return acc * 2.0 * M_PI / n;
  }
  const GaussRule& polar = gauss_legendre(32);
  const int naz = 64;
  double acc = 0.0;
  for (size_t m = 0; m < polar.x.size(); ++m) {
    const double u = polar.x[m];  // cos of polar angle
    const double su = std::sqrt(std::max(0.0, 1.0 - u * u));
    for (int k = 0; k < naz; ++k) {
      const double th = 2.0 * M_PI * (k + 0.5) / naz;
      const double dir[3] = {su * std::cos(th), su * std::sin(th), u};
      acc += polar.w[m] * dir[i] * spec.K({r * dir[0], r * dir[1], r * dir[2]});
    }
  }
  return acc * 2.0 * M_PI / naz;
}

}  // namespace

std::vector<double> drift_vector(const OperatorSpec& spec,
                                 const DriftQuadrature& quad) {
  const int d = spec.d;
  if (spec.sigma == 1.0)
    throw std::invalid_argument(
        "drift undefined at order 1: both compensators already coincide");
  const bool inner = spec.sigma < 1.0;
  const auto& a = spec.coefficient;
  const bool sym = a.fully_even || (inner && a.even_inside_unit_ball) ||
                   (!inner && a.even_outside_unit_ball);
  if (sym || a.label == "one") return std::vector<double>(d, 0.0);

  std::vector<double> b(d, 0.0);
  for (int i = 0; i < d; ++i) {
    // y_i = r theta_i adds one power of r to the surface-measure factor.
    auto g = [&](double r) {
      return std::pow(r, d) * angular_first_moment(spec, r, i, quad);
    };
    // Octave panels from 1 align with the dyadic cells of generated
    // coefficients, so piecewise-constant a stays smooth per panel.
    if (inner) {
      TailIntegral part =
          integrate_octaves_down(g, 1.0, quad.rel_tol, 1200, quad.order);
      if (!part.converged)
        throw std::runtime_error("drift quadrature did not converge near 0");
      b[i] = -part.value;
    } else {
      TailIntegral part =
          integrate_octaves_up(g, 1.0, quad.rel_tol, 1200, quad.order);
      if (!part.converged)
        throw std::runtime_error("drift quadrature did not converge at infinity");
      b[i] = part.value;
    }
  }
  return b;
}

}  // namespace nonloc
