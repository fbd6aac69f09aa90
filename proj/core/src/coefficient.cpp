#include "nonloc/coefficient.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>
#include <sstream>
#include <stdexcept>

namespace nonloc {

CoefficientField coefficient_one() {
  CoefficientField a;
  a.eval = [](const std::vector<double>&) { return 1.0; };
  a.nu = 1.0;
  a.Lambda = 1.0;
  a.fully_even = true;
  a.even_inside_unit_ball = true;
  a.even_outside_unit_ball = true;
  a.label = "one";
  a.angular_only = true;
  return a;
}

CoefficientField coefficient_constant(double value) {
  if (!(value > 0.0)) throw std::invalid_argument("coefficient must be positive");
  CoefficientField a;
  a.eval = [value](const std::vector<double>&) { return value; };
  a.nu = value;
  a.Lambda = value;
  a.fully_even = true;
  a.even_inside_unit_ball = true;
  a.even_outside_unit_ball = true;
  std::ostringstream os;
  os << "const(" << value << ")";
  a.label = os.str();
  a.angular_only = true;
  return a;
}

CoefficientField coefficient_signed_halfspace(double base, double amp) {
  if (!(base - std::abs(amp) > 0.0))
    throw std::invalid_argument("signed halfspace: base - |amp| must be > 0");
  CoefficientField a;
  a.eval = [base, amp](const std::vector<double>& y) {
    const double s = y[0] > 0.0 ? 1.0 : (y[0] < 0.0 ? -1.0 : 0.0);
    return base + amp * s;
  };
  a.nu = base - std::abs(amp);
  a.Lambda = base + std::abs(amp);
  std::ostringstream os;
  os << "sgn(" << base << "," << amp << ")";
  a.label = os.str();
  a.angular_only = true;
  return a;
}

CoefficientField coefficient_indicator_halfspace(double base, double amp) {
  if (!(base > 0.0) || !(base + amp > 0.0))
    throw std::invalid_argument("indicator halfspace: values must be > 0");
  CoefficientField a;
  a.eval = [base, amp](const std::vector<double>& y) {
    return y[0] > 0.0 ? base + amp : base;
  };
  a.nu = std::min(base, base + amp);
  a.Lambda = std::max(base, base + amp);
  std::ostringstream os;
  os << "ind(" << base << "," << amp << ")";
  a.label = os.str();
  a.angular_only = true;
  return a;
}

CoefficientField coefficient_cosine_angular(double base, double amp) {
  if (!(base - std::abs(amp) > 0.0))
    throw std::invalid_argument("cosine angular: base - |amp| must be > 0");
  CoefficientField a;
  a.eval = [base, amp](const std::vector<double>& y) {
    if (y.size() != 2) throw std::invalid_argument("cosine angular needs d = 2");
    const double r = std::hypot(y[0], y[1]);
    if (r == 0.0) return base;
    return base + amp * y[0] / r;
  };
  a.nu = base - std::abs(amp);
  a.Lambda = base + std::abs(amp);
  std::ostringstream os;
  os << "cosang(" << base << "," << amp << ")";
  a.label = os.str();
  a.angular_only = true;
  return a;
}

namespace {

struct RandomField {
  int d;
  RandomCoefficientOptions opt;
  int shells;   // radial cells including inner and outer caps
  int sectors;  // angular cells
  std::vector<double> values;  // shells x sectors

  int shell_of(double r) const {
    if (opt.angular_only) return 0;
    int k = static_cast<int>(std::floor(std::log2(r)));
    k = std::clamp(k, opt.radial_lo_exp - 1, opt.radial_hi_exp);
    return k - (opt.radial_lo_exp - 1);
  }

  int sector_of(const std::vector<double>& y) const {
    if (d == 1) return y[0] > 0.0 ? 0 : 1;
    if (d == 2) {
      double th = std::atan2(y[1], y[0]);
      if (th < 0.0) th += 2.0 * M_PI;
      int s = static_cast<int>(th / (2.0 * M_PI) * sectors);
      return std::min(s, sectors - 1);
    }
    double th = std::atan2(y[1], y[0]);
    if (th < 0.0) th += 2.0 * M_PI;
    const int naz = sectors / 2;
    int s = static_cast<int>(th / (2.0 * M_PI) * naz);
    s = std::min(s, naz - 1);
    return s + (y[2] >= 0.0 ? 0 : naz);
  }

  int mirror_sector(int s) const {
    if (d == 1) return 1 - s;
    if (d == 2) return (s + sectors / 2) % sectors;
    const int naz = sectors / 2;
    const int az = s % naz;
    const int band = s / naz;
    return (az + naz / 2) % naz + (1 - band) * naz;
  }

  bool shell_inside_ball(int shell) const {
    // cells with upper radius <= 1; shell index maps back to exponent
    const int k = shell + (opt.radial_lo_exp - 1);
    return k + 1 <= 0;
  }

  double eval(const std::vector<double>& y) const {
    double r2 = 0.0;
    for (double c : y) r2 += c * c;
    const double r = std::sqrt(r2);
    if (!(r > 0.0)) return values[0];
    const int sh = shell_of(r);
    int s = sector_of(y);
    const bool inside = shell_inside_ball(sh);
    const bool mirror = opt.fully_even ||
                        (inside && opt.even_inside_unit_ball) ||
                        (!inside && opt.even_outside_unit_ball);
    if (mirror) s = std::min(s, mirror_sector(s));
    return values[sh * sectors + s];
  }
};

}  // namespace

CoefficientField coefficient_random(int d, std::uint64_t seed,
                                    const RandomCoefficientOptions& opt) {
  if (d < 1 || d > 3) throw std::invalid_argument("dimension must be 1, 2 or 3");
  if (!(opt.nu > 0.0) || !(opt.Lambda >= opt.nu))
    throw std::invalid_argument("need 0 < nu <= Lambda");
  if (opt.radial_hi_exp < opt.radial_lo_exp)
    throw std::invalid_argument("radial exponent range is empty");
  auto field = std::make_shared<RandomField>();
  field->d = d;
  field->opt = opt;
  field->shells =
      opt.angular_only ? 1 : opt.radial_hi_exp - opt.radial_lo_exp + 2;
  if (d == 1) {
    field->sectors = 2;
  } else {
    int s = opt.angular_sectors;
    if (s < 2 || s % 2 != 0)
      throw std::invalid_argument("angular sector count must be even, >= 2");
    if (d == 3 && (s % 4 != 0))
      throw std::invalid_argument("d = 3 needs sector count divisible by 4");
    field->sectors = s;
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(opt.nu, opt.Lambda);
  field->values.resize(static_cast<size_t>(field->shells) * field->sectors);
  for (double& v : field->values) v = dist(rng);

  CoefficientField a;
  a.eval = [field](const std::vector<double>& y) { return field->eval(y); };
  a.nu = opt.nu;
  a.Lambda = opt.Lambda;
  a.even_inside_unit_ball = opt.even_inside_unit_ball || opt.fully_even;
  a.even_outside_unit_ball = opt.even_outside_unit_ball || opt.fully_even;
  a.fully_even = opt.fully_even;
  a.seed = seed;
  a.angular_only = opt.angular_only;
  if (!opt.angular_only) {
    for (int k = opt.radial_lo_exp; k <= opt.radial_hi_exp; ++k)
      a.radial_kinks.push_back(std::ldexp(1.0, k));
  }
  std::ostringstream os;
  os << "rand(d=" << d << ",seed=" << seed << ",nu=" << opt.nu
     << ",La=" << opt.Lambda << ",sect=" << field->sectors;
  if (opt.angular_only) os << ",ang";
  if (opt.fully_even)
    os << ",evenIO";
  else if (opt.even_inside_unit_ball)
    os << ",evenI";
  else if (opt.even_outside_unit_ball)
    os << ",evenO";
  os << ")";
  a.label = os.str();
  return a;
}

}  // namespace nonloc
