#include <cmath>

#include <doctest.h>

#include "nonloc/quadrature.hpp"

using namespace nonloc;

TEST_CASE("gauss rules integrate polynomials and smooth functions") {
  const GaussRule& gl = gauss_legendre(16);
  REQUIRE(gl.x.size() == 16);
  double s = 0.0;
  for (int i = 0; i < 16; ++i) s += gl.w[i] * gl.x[i] * gl.x[i];
  CHECK(s == doctest::Approx(2.0 / 3.0).epsilon(1e-14));

  CHECK(integrate_panel([](double x) { return std::cos(x); }, 0.0,
                        std::acos(-1.0) / 2.0) ==
        doctest::Approx(1.0).epsilon(1e-13));

  const double pi = std::acos(-1.0);
  CHECK(integrate_segments([](double x) { return std::sin(x) * std::sin(x); },
                           0.0, 2.0 * pi, 8) ==
        doctest::Approx(pi).epsilon(1e-13));
}

TEST_CASE("laguerre rule: cached nodes reproduce the frozen geometric sum") {
  const GaussRule& rule = gauss_laguerre(96);
  REQUIRE(rule.x.size() == 96);
  auto damp = [&](double c) {
    double q = 0.0;
    for (int i = 0; i < 96; ++i) q += rule.w[i] * std::exp(-c * rule.x[i]);
    return q;
  };
  // int_0^inf e^{-s} e^{-cs} ds = 1/(1+c); degrades for c >> 1, which is why
  // the semigroup solver rescales per mode instead of using the raw rule
  CHECK(damp(0.5) == doctest::Approx(0.6666666666665082).epsilon(1e-11));
  CHECK(damp(5.0) == doctest::Approx(1.0 / 6.0).epsilon(1e-9));
  CHECK(std::abs(damp(250.0) - 1.0 / 251.0) > 1e-3);  // raw rule unusable here
}

TEST_CASE("octave accumulation handles power tails on both ends") {
  TailIntegral up = integrate_octaves_up(
      [](double r) { return std::pow(r, -2.5); }, 1.0, 1e-12);
  CHECK(up.converged);
  CHECK(up.value == doctest::Approx(1.0 / 1.5).epsilon(1e-11));

  TailIntegral down = integrate_octaves_down(
      [](double r) { return 1.0 / std::sqrt(r); }, 1.0, 1e-12);
  CHECK(down.converged);
  CHECK(down.value == doctest::Approx(2.0).epsilon(1e-11));

  // non-integrable tail must be flagged, not silently truncated
  TailIntegral bad = integrate_octaves_up(
      [](double r) { return 1.0 / r; }, 1.0, 1e-12, 200);
  CHECK_FALSE(bad.converged);
}

TEST_CASE("octave shells are raw panel integrals") {
  std::vector<double> up =
      octave_shells([](double r) { return std::pow(r, -2.0); }, 1.0, 3, +1);
  REQUIRE(up.size() == 3);
  CHECK(up[0] == doctest::Approx(0.5).epsilon(1e-12));       // [1,2)
  CHECK(up[1] == doctest::Approx(0.25).epsilon(1e-12));      // [2,4)
  std::vector<double> dn =
      octave_shells([](double) { return 1.0; }, 1.0, 2, -1);
  CHECK(dn[0] == doctest::Approx(0.5).epsilon(1e-12));       // (1/2,1]
  CHECK(dn[1] == doctest::Approx(0.25).epsilon(1e-12));      // (1/4,1/2]
}

TEST_CASE("alternating tail collapses oscillatory integrals") {
  const double pi = std::acos(-1.0);
  const double got = integrate_alternating_tail(
      [](double r) { return std::sin(r) / r; }, pi, pi);
  CHECK(got == doctest::Approx(-0.28114072518756927).epsilon(1e-10));

  const double got2 = integrate_alternating_tail(
      [](double r) { return std::sin(r) / (r * r); }, 1.0, pi);
  CHECK(got2 == doctest::Approx(0.50406706190692829).epsilon(1e-9));
}
