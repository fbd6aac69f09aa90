#include <cmath>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "nonloc/coefficient.hpp"

using namespace nonloc;

TEST_CASE("explicit coefficient families evaluate their formulas") {
  const CoefficientField one = coefficient_one();
  CHECK(one({3.7}) == 1.0);
  CHECK(one.nu == 1.0);
  CHECK(one.Lambda == 1.0);
  CHECK(one.fully_even);

  const CoefficientField c = coefficient_constant(1.7);
  CHECK(c({-2.0, 0.5}) == 1.7);
  CHECK(c.nu == 1.7);
  CHECK(c.Lambda == 1.7);

  const CoefficientField sg = coefficient_signed_halfspace(1.0, 0.5);
  CHECK(sg({2.0}) == doctest::Approx(1.5));
  CHECK(sg({-2.0}) == doctest::Approx(0.5));
  CHECK(sg.nu == doctest::Approx(0.5));
  CHECK(sg.Lambda == doctest::Approx(1.5));

  const CoefficientField ind = coefficient_indicator_halfspace(1.0, 0.5);
  CHECK(ind({0.3}) == doctest::Approx(1.5));
  CHECK(ind({-0.3}) == doctest::Approx(1.0));

  const CoefficientField ca = coefficient_cosine_angular(1.0, 0.25);
  CHECK(ca({2.0, 0.0}) == doctest::Approx(1.25));
  CHECK(ca({0.0, 5.0}) == doctest::Approx(1.0));
  CHECK(ca({-1.0, 0.0}) == doctest::Approx(0.75));
  CHECK(ca.angular_only);
}

TEST_CASE("random coefficients respect bounds and are seed-deterministic") {
  RandomCoefficientOptions opt;
  opt.nu = 0.5;
  opt.Lambda = 2.0;
  const CoefficientField a = coefficient_random(1, 42, opt);
  const CoefficientField b = coefficient_random(1, 42, opt);
  const CoefficientField c = coefficient_random(1, 43, opt);
  bool differs = false;
  for (double r = 1e-3; r < 16.0; r *= 1.37) {
    for (double s : {r, -r}) {
      const double v = a({s});
      CHECK(v >= 0.5);
      CHECK(v <= 2.0);
      CHECK(v == b({s}));
      if (v != c({s})) differs = true;
    }
  }
  CHECK(differs);
  CHECK(a.seed == 42);
  CHECK(a.nu == 0.5);
  CHECK(a.Lambda == 2.0);
  CHECK_FALSE(a.radial_kinks.empty());
  for (size_t i = 1; i < a.radial_kinks.size(); ++i)
    CHECK(a.radial_kinks[i - 1] < a.radial_kinks[i]);
}

TEST_CASE("evenness flags are kept exactly on the flagged region") {
  RandomCoefficientOptions opt;
  opt.even_inside_unit_ball = true;
  const CoefficientField a = coefficient_random(1, 7, opt);
  CHECK(a.even_inside_unit_ball);
  for (double r : {0.05, 0.3, 0.7, 0.97}) CHECK(a({r}) == a({-r}));

  // a generic draw is asymmetric somewhere inside the ball
  const CoefficientField g = coefficient_random(1, 7);
  bool asym = false;
  for (double r = 0.01; r < 1.0; r *= 1.5)
    if (g({r}) != g({-r})) asym = true;
  CHECK(asym);

  RandomCoefficientOptions outer;
  outer.even_outside_unit_ball = true;
  const CoefficientField ao = coefficient_random(1, 9, outer);
  for (double r : {1.5, 4.0, 20.0}) CHECK(ao({r}) == ao({-r}));

  RandomCoefficientOptions full;
  full.fully_even = true;
  const CoefficientField af = coefficient_random(1, 11, full);
  for (double r = 1e-3; r < 30.0; r *= 1.9) CHECK(af({r}) == af({-r}));
}

TEST_CASE("evenness canonicalization works across sectors in d = 2") {
  RandomCoefficientOptions opt;
  opt.fully_even = true;
  const CoefficientField a = coefficient_random(2, 5, opt);
  for (double r : {0.2, 0.8, 1.7, 6.0}) {
    for (double th = 0.13; th < 6.2; th += 0.71) {
      const std::vector<double> y = {r * std::cos(th), r * std::sin(th)};
      const std::vector<double> ym = {-y[0], -y[1]};
      CHECK(a(y) == a(ym));
    }
  }
}

TEST_CASE("random coefficient rejects inconsistent options") {
  RandomCoefficientOptions opt;
  opt.nu = 2.0;
  opt.Lambda = 0.5;
  CHECK_THROWS_AS(coefficient_random(1, 1, opt), std::invalid_argument);
  RandomCoefficientOptions odd;
  odd.angular_sectors = 7;
  CHECK_THROWS_AS(coefficient_random(2, 1, odd), std::invalid_argument);
}
