#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "nonloc/kernel.hpp"

using namespace nonloc;

// c(d,a) = 2^a Gamma((d+a)/2) / (pi^{d/2} |Gamma(-a/2)|), the constant with
// int (1 - cos xi.y) c |y|^{-d-a} dy = |xi|^a.
TEST_CASE("stable normalization matches the gamma-function closed form") {
  CHECK(stable_normalization(1, 0.5) ==
        doctest::Approx(0.19947114020071638).epsilon(1e-8));
  CHECK(stable_normalization(1, 1.0) ==
        doctest::Approx(0.31830988618379075).epsilon(1e-8));
  CHECK(stable_normalization(1, 1.5) ==
        doctest::Approx(0.29920671030107465).epsilon(1e-8));
  CHECK(stable_normalization(2, 0.5) ==
        doctest::Approx(0.083241983875425099).epsilon(1e-7));
  CHECK(stable_normalization(2, 1.0) ==
        doctest::Approx(0.15915494309189535).epsilon(1e-7));
  CHECK(stable_normalization(3, 0.5) ==
        doctest::Approx(0.047620226950680723).epsilon(1e-7));
  CHECK(stable_normalization(3, 1.5) ==
        doctest::Approx(0.11905056737670185).epsilon(1e-7));
  CHECK_THROWS_AS(stable_normalization(1, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(stable_normalization(4, 0.5), std::invalid_argument);
}

TEST_CASE("stable kernel carries its metadata and the normalized density") {
  const RadialJumpKernel k = stable_kernel(1, 0.5);
  CHECK(k.family == KernelFamily::Stable);
  REQUIRE(k.sigma.has_value());
  CHECK(*k.sigma == 0.5);
  REQUIRE(k.alpha.has_value());
  CHECK(*k.alpha == 0.5);
  const double c = stable_normalization(1, 0.5);
  CHECK(k(2.0) == doctest::Approx(c * std::pow(2.0, -1.5)).epsilon(1e-13));
  CHECK(k(0.1) == doctest::Approx(c * std::pow(0.1, -1.5)).epsilon(1e-13));
}

TEST_CASE("bernstein catalog evaluates its defining formulas") {
  const BernsteinFunction ss = bernstein_stable_sum({0.25, 0.45});
  CHECK(ss(4.0) == doctest::Approx(std::pow(4.0, 0.25) + std::pow(4.0, 0.45))
                       .epsilon(1e-14));
  CHECK(*ss.sigma_hint == doctest::Approx(0.9));
  CHECK(ss.has_subordinator_density);

  const BernsteinFunction pp = bernstein_plus_power(0.3, 0.4);
  CHECK(pp(2.0) ==
        doctest::Approx(std::pow(2.0 + std::pow(2.0, 0.3), 0.4)).epsilon(1e-14));
  CHECK(*pp.sigma_hint == doctest::Approx(0.8));

  const BernsteinFunction lu = bernstein_log_up(0.4, 0.2);
  CHECK(lu(3.0) == doctest::Approx(std::pow(3.0, 0.4) *
                                   std::pow(std::log(4.0), 0.2))
                       .epsilon(1e-14));
  const BernsteinFunction ld = bernstein_log_down(0.5, 0.3);
  CHECK(ld(3.0) == doctest::Approx(std::pow(3.0, 0.5) /
                                   std::pow(std::log(4.0), 0.3))
                       .epsilon(1e-14));

  // log-cosh(sqrt(lambda))^a and log(sinh x / x)^a: both ~ lambda^a at
  // infinity and ~ (lambda/2 or lambda/6)^a near zero
  const BernsteinFunction lc = bernstein_log_cosh(0.5);
  CHECK(lc(1e-8) == doctest::Approx(std::pow(0.5e-8, 0.5)).epsilon(1e-5));
  const BernsteinFunction ls = bernstein_log_sinh(0.5);
  CHECK(ls(1e-8) == doctest::Approx(std::pow(1e-8 / 6.0, 0.5)).epsilon(1e-5));

  CHECK_THROWS_AS(bernstein_stable_sum({}), std::invalid_argument);
  CHECK_THROWS_AS(bernstein_stable_sum({1.5}), std::invalid_argument);
  CHECK_THROWS_AS(bernstein_log_up(0.8, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(bernstein_log_down(0.3, 0.5), std::invalid_argument);
}

TEST_CASE("subordination with phi = sqrt reproduces the Cauchy density") {
  // phi(lambda) = lambda^{1/2} subordinates Brownian motion to the Cauchy
  // process; j(r) = (1/pi) r^{-2} in d = 1
  const RadialJumpKernel k = subordinate_kernel(bernstein_stable_sum({0.5}), 1);
  const double pi = std::acos(-1.0);
  for (double r : {0.5, 1.0, 2.0})
    CHECK(k(r) == doctest::Approx(1.0 / (pi * r * r)).epsilon(1e-9));
}

TEST_CASE("subordinate stable sums are sums of stable densities") {
  // phi = lambda^{0.25} + lambda^{0.45}: jump measures of independent sums add
  const RadialJumpKernel k =
      subordinate_kernel(bernstein_stable_sum({0.25, 0.45}), 1);
  const double c05 = 0.19947114020071638;
  const double c09 = 0.30237048634305358;
  for (double r : {0.3, 1.0, 3.0}) {
    const double want =
        c05 * std::pow(r, -1.5) + c09 * std::pow(r, -1.9);
    CHECK(k(r) == doctest::Approx(want).epsilon(1e-8));
  }
  CHECK(*k.sigma == doctest::Approx(0.9));
}

TEST_CASE("subordinate kernels need an analytic subordinator density") {
  CHECK_THROWS_AS(subordinate_kernel(bernstein_log_cosh(0.5), 1),
                  std::invalid_argument);
}

TEST_CASE("model kernel is r^{-d} phi(r^{-2})") {
  const BernsteinFunction phi = bernstein_stable_sum({0.25, 0.45});
  const RadialJumpKernel k = model_kernel(phi, 2);
  CHECK(k(2.0) == doctest::Approx(0.25 * phi(0.25)).epsilon(1e-14));
  CHECK(*k.sigma == doctest::Approx(0.9));
  CHECK(k.family == KernelFamily::Model);
}

TEST_CASE("custom kernels carry optional metadata") {
  const RadialJumpKernel k = custom_kernel(
      [](double r) { return std::exp(-r) / (r * r); }, 1.0, "exp-tail");
  CHECK(k.label == "exp-tail");
  REQUIRE(k.sigma.has_value());
  CHECK(*k.sigma == 1.0);
  CHECK_FALSE(k.alpha.has_value());
}
