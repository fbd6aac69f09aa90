#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "nonloc/operator_spec.hpp"

using namespace nonloc;

TEST_CASE("compensator regime follows the order") {
  CHECK(chi_regime_for(0.5) == ChiRegime::None);
  CHECK(chi_regime_for(1.0) == ChiRegime::UnitBall);
  CHECK(chi_regime_for(1.5) == ChiRegime::Full);
}

TEST_CASE("variant names are stable strings") {
  CHECK(variant_name(OperatorVariant::L) == "L");
  CHECK(variant_name(OperatorVariant::LTilde) == "L-tilde");
  CHECK(variant_name(OperatorVariant::A) == "A");
  CHECK(variant_name(OperatorVariant::LStar) == "L-star");
  CHECK(variant_name(OperatorVariant::LTildeStar) == "L-tilde-star");
}

TEST_CASE("K composes coefficient and kernel, reflected for adjoints") {
  const RadialJumpKernel j = stable_kernel(1, 0.5);
  const CoefficientField a = coefficient_indicator_halfspace(1.0, 0.5);
  const OperatorSpec spec = make_spec(1, j, a, 0.5, OperatorVariant::L);
  CHECK(spec.K({2.0}) == doctest::Approx(1.5 * j(2.0)).epsilon(1e-14));
  CHECK(spec.K({-2.0}) == doctest::Approx(1.0 * j(2.0)).epsilon(1e-14));

  const OperatorSpec star = make_spec(1, j, a, 0.5, OperatorVariant::LStar);
  CHECK(star.reflected());
  CHECK(star.K({2.0}) == doctest::Approx(1.0 * j(2.0)).epsilon(1e-14));
  CHECK(star.K({-2.0}) == doctest::Approx(1.5 * j(2.0)).epsilon(1e-14));
}

TEST_CASE("compensator indicator by variant and order") {
  const RadialJumpKernel j = stable_kernel(1, 0.5);
  const CoefficientField a = coefficient_one();

  const OperatorSpec low = make_spec(1, j, a, 0.5, OperatorVariant::L);
  CHECK(low.chi == ChiRegime::None);
  CHECK(low.chi_at(0.5) == 0.0);
  CHECK(low.chi_at(2.0) == 0.0);

  const OperatorSpec unit = make_spec(1, stable_kernel(1, 1.0), a, 1.0,
                                      OperatorVariant::L);
  CHECK(unit.chi_at(0.5) == 1.0);
  CHECK(unit.chi_at(2.0) == 0.0);

  const OperatorSpec high = make_spec(1, stable_kernel(1, 1.5), a, 1.5,
                                      OperatorVariant::L);
  CHECK(high.chi_at(0.5) == 1.0);
  CHECK(high.chi_at(2.0) == 1.0);

  // the drift-compensated variant always truncates at the unit ball
  const OperatorSpec tilde = make_spec(1, j, a, 0.5, OperatorVariant::LTilde);
  CHECK(tilde.chi_at(0.5) == 1.0);
  CHECK(tilde.chi_at(2.0) == 0.0);
  const OperatorSpec tilde_hi = make_spec(1, stable_kernel(1, 1.5), a, 1.5,
                                          OperatorVariant::LTildeStar);
  CHECK(tilde_hi.chi_at(0.5) == 1.0);
  CHECK(tilde_hi.chi_at(2.0) == 0.0);
}

TEST_CASE("kernel split separates the symmetric part") {
  const RadialJumpKernel j = stable_kernel(1, 0.5);
  const CoefficientField a = coefficient_signed_halfspace(1.0, 0.5);
  const OperatorSpec spec = make_spec(1, j, a, 0.5, OperatorVariant::L);
  const KernelSplit split = kernel_split(spec);
  // K(+y) = 1.5 j, K(-y) = 0.5 j: K1 = 0.5 j on both sides
  CHECK(split.K1({2.0}) == doctest::Approx(0.5 * j(2.0)).epsilon(1e-13));
  CHECK(split.K1({-2.0}) == doctest::Approx(0.5 * j(2.0)).epsilon(1e-13));
  CHECK(split.K2({2.0}) == doctest::Approx(1.0 * j(2.0)).epsilon(1e-13));
  CHECK(split.K2({-2.0}) == doctest::Approx(0.0));
}

// integrating y a(y) j(|y|) over the halfspace coefficient classes gives
// multiples of the stable normalization constant (closed forms)
TEST_CASE("drift vector closed forms for halfspace coefficients") {
  const double c05 = 0.19947114020071638;
  const double c15 = 0.29920671030107465;
  const RadialJumpKernel j05 = stable_kernel(1, 0.5);
  const RadialJumpKernel j15 = stable_kernel(1, 1.5);

  const OperatorSpec ind = make_spec(1, j05,
                                     coefficient_indicator_halfspace(1.0, 0.5),
                                     0.5, OperatorVariant::LTilde);
  CHECK(drift_vector(ind)[0] == doctest::Approx(-c05).epsilon(1e-7));

  const OperatorSpec sgn = make_spec(1, j05,
                                     coefficient_signed_halfspace(1.0, 0.5),
                                     0.5, OperatorVariant::LTilde);
  CHECK(drift_vector(sgn)[0] == doctest::Approx(-2.0 * c05).epsilon(1e-7));

  const OperatorSpec tail = make_spec(1, j15,
                                      coefficient_indicator_halfspace(1.0, 0.5),
                                      1.5, OperatorVariant::LTilde);
  CHECK(drift_vector(tail)[0] == doctest::Approx(c15).epsilon(1e-7));

  // even coefficients produce no drift
  const OperatorSpec even = make_spec(1, j05, coefficient_one(), 0.5,
                                      OperatorVariant::LTilde);
  CHECK(drift_vector(even)[0] == doctest::Approx(0.0));

  const OperatorSpec at_one = make_spec(1, stable_kernel(1, 1.0),
                                        coefficient_one(), 1.0,
                                        OperatorVariant::LTilde);
  CHECK_THROWS_AS(drift_vector(at_one), std::invalid_argument);
}

TEST_CASE("drift vector in d = 2 for the cosine-angular class") {
  // b1 = -amp c(2,1/2) int_{B1} r cos^2(th) r^{-5/2} r dr dth = -2 pi amp c
  const double c = 0.083241983875425099;
  const double pi = std::acos(-1.0);
  const OperatorSpec spec = make_spec(2, stable_kernel(2, 0.5),
                                      coefficient_cosine_angular(1.0, 0.25),
                                      0.5, OperatorVariant::LTilde);
  const std::vector<double> b = drift_vector(spec);
  REQUIRE(b.size() == 2);
  CHECK(b[0] == doctest::Approx(-2.0 * pi * 0.25 * c).epsilon(1e-6));
  CHECK(b[1] == doctest::Approx(0.0).epsilon(1e-12));
}
