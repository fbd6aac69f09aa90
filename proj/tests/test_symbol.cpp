#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "nonloc/coefficient.hpp"
#include "nonloc/grid.hpp"
#include "nonloc/kernel.hpp"
#include "nonloc/operator_spec.hpp"
#include "nonloc/symbol.hpp"

using namespace nonloc;

TEST_CASE("psi of a stable kernel is the pure power") {
  struct Case {
    int d;
    double alpha;
  };
  for (Case c : {Case{1, 0.5}, Case{1, 1.5}, Case{2, 1.0}}) {
    const RadialJumpKernel k = stable_kernel(c.d, c.alpha);
    for (double q : {0.25, 1.0, 4.0, 100.0})
      CHECK(psi(k, c.d, q) ==
            doctest::Approx(std::pow(q, c.alpha)).epsilon(1e-7));
  }
  const RadialJumpKernel k2 = stable_kernel(2, 0.5);
  CHECK(psi(k2, 2, {3.0, 4.0}) ==
        doctest::Approx(std::pow(5.0, 0.5)).epsilon(1e-7));
}

TEST_CASE("psi of the subordinate Cauchy kernel") {
  const RadialJumpKernel k = subordinate_kernel(bernstein_stable_sum({0.5}), 1);
  for (double q : {0.5, 1.0, 2.0, 8.0})
    CHECK(psi(k, 1, q) == doctest::Approx(q).epsilon(1e-7));
}

TEST_CASE("symbol with unit coefficient is minus psi") {
  const OperatorSpec spec =
      make_spec(1, stable_kernel(1, 0.5), coefficient_one(), 0.5);
  const GridSpec g{1, 64, 16.0};
  const SymbolTable t = full_symbol(spec, g);
  REQUIRE(t.values.size() == 64);
  CHECK(t.at(0) == std::complex<double>(0.0, 0.0));
  for (int j = 1; j < 64; ++j) {
    const double q = std::abs(g.xi_of(g.freq_index(j)));
    CHECK(t.at(j).real() == doctest::Approx(-std::sqrt(q)).epsilon(1e-8));
    CHECK(std::abs(t.at(j).imag()) < 1e-12);
  }
  for (int j = 1; j < 64; ++j) CHECK(t.at(j) == std::conj(t.at(64 - j)));
}

TEST_CASE("symbol of the half-space indicator coefficient, closed form") {
  // a(y) = 1 + 0.5 * 1_{y > 0}, alpha = 1/2:
  //   m(xi) = -(1 + amp/2) |xi|^{1/2} + i * (amp/4) * sign(xi) |xi|^{1/2}
  const OperatorSpec spec = make_spec(
      1, stable_kernel(1, 0.5), coefficient_indicator_halfspace(1.0, 0.5), 0.5);
  const GridSpec g{1, 32, 8.0};
  const SymbolTable t = full_symbol(spec, g);
  for (int k = 1; k <= 4; ++k) {
    const double xi = g.xi_of(k);
    CHECK(t.at(k).real() ==
          doctest::Approx(-1.25 * std::sqrt(xi)).epsilon(1e-8));
    CHECK(t.at(k).imag() ==
          doctest::Approx(0.125 * std::sqrt(xi)).epsilon(1e-8));
  }
}

TEST_CASE("symbol of the cosine-angular coefficient in d = 2") {
  const OperatorSpec spec = make_spec(
      2, stable_kernel(2, 0.5), coefficient_cosine_angular(1.0, 0.5), 0.5);
  const GridSpec g{2, 8, 8.0};
  const SymbolTable t = full_symbol(spec, g);
  const double slope = 0.72947987174215934;  // per unit amp at |xi| = 1
  for (int k = 1; k <= 2; ++k) {
    int idx[2] = {k, 0};
    const std::complex<double> m = t.at(g.flatten(idx));
    const double q = g.xi_of(k);
    CHECK(m.real() == doctest::Approx(-std::sqrt(q)).epsilon(1e-6));
    CHECK(m.imag() == doctest::Approx(0.5 * slope * std::sqrt(q)).epsilon(1e-6));
  }
}

TEST_CASE("order one requires a cancellation certificate") {
  const OperatorSpec spec =
      make_spec(1, stable_kernel(1, 1.0), coefficient_one(), 1.0);
  const GridSpec g{1, 32, 8.0};
  CHECK_THROWS_AS(full_symbol(spec, g), std::runtime_error);
  const SymbolTable t = full_symbol(spec, g, true);
  for (int k = 1; k <= 8; ++k) {
    const double q = g.xi_of(k);
    CHECK(t.at(k).real() == doctest::Approx(-q).epsilon(1e-7));
    CHECK(std::abs(t.at(k).imag()) < 1e-9);
  }
}

TEST_CASE("order above one uses the full compensator") {
  const OperatorSpec spec =
      make_spec(1, stable_kernel(1, 1.5), coefficient_one(), 1.5);
  const GridSpec g{1, 32, 8.0};
  const SymbolTable t = full_symbol(spec, g);
  for (int k = 1; k <= 8; ++k) {
    const double q = g.xi_of(k);
    CHECK(t.at(k).real() == doctest::Approx(-std::pow(q, 1.5)).epsilon(1e-7));
    CHECK(std::abs(t.at(k).imag()) < 1e-9);
  }
}

TEST_CASE("drift variant shifts the symbol by i b . xi") {
  const RadialJumpKernel k = stable_kernel(1, 0.5);
  const CoefficientField a = coefficient_indicator_halfspace(1.0, 0.5);
  const OperatorSpec sL = make_spec(1, k, a, 0.5, OperatorVariant::L);
  const OperatorSpec sT = make_spec(1, k, a, 0.5, OperatorVariant::LTilde);
  const GridSpec g{1, 32, 8.0};
  const SymbolTable tL = full_symbol(sL, g);
  const SymbolTable tT = full_symbol(sT, g);
  const std::vector<double> b = drift_vector(sT);
  REQUIRE(b.size() == 1);
  for (int j = 1; j <= 6; ++j) {
    const double xi = g.xi_of(j);
    const std::complex<double> diff = tT.at(j) - tL.at(j);
    CHECK(diff.imag() == doctest::Approx(b[0] * xi).epsilon(1e-6));
    CHECK(std::abs(diff.real()) < 1e-8);
  }
}

TEST_CASE("adjoint symbol is the conjugate") {
  const OperatorSpec sL = make_spec(
      1, stable_kernel(1, 0.5), coefficient_indicator_halfspace(1.0, 0.5), 0.5,
      OperatorVariant::L);
  OperatorSpec sS = sL;
  sS.variant = OperatorVariant::LStar;
  const GridSpec g{1, 32, 8.0};
  const SymbolTable tL = full_symbol(sL, g);
  const SymbolTable tS = full_symbol(sS, g);
  for (int j = 1; j < 32; ++j) {
    CHECK(tS.at(j).real() ==
          doctest::Approx(tL.at(j).real()).epsilon(1e-9));
    CHECK(tS.at(j).imag() ==
          doctest::Approx(-tL.at(j).imag()).epsilon(1e-9));
  }
}

TEST_CASE("symbol tables are deterministic and cached") {
  const OperatorSpec spec = make_spec(
      1, stable_kernel(1, 0.5), coefficient_random(1, 11), 0.5);
  const GridSpec g{1, 32, 8.0};
  const SymbolTable t1 = full_symbol(spec, g);
  const SymbolTable t2 = full_symbol(spec, g);
  CHECK(t1.values == t2.values);

  CHECK(spec_cache_key(spec) !=
        spec_cache_key(make_spec(1, stable_kernel(1, 0.5),
                                 coefficient_random(1, 12), 0.5)));
  OperatorSpec tilde = spec;
  tilde.variant = OperatorVariant::LTilde;
  CHECK(spec_cache_key(spec) != spec_cache_key(tilde));
  CHECK(spec_cache_key(spec) ==
        spec_cache_key(make_spec(1, stable_kernel(1, 0.5),
                                 coefficient_random(1, 11), 0.5)));
}

TEST_CASE("kernel bound sup equals the stable normalization") {
  const SymbolKernelBoundReport rep =
      check_symbol_kernel_bound(stable_kernel(1, 0.5), 1);
  CHECK(rep.pass);
  CHECK(rep.sup_ratio ==
        doctest::Approx(stable_normalization(1, 0.5)).epsilon(1e-6));
  CHECK(rep.sup_ratio_refined ==
        doctest::Approx(rep.sup_ratio).epsilon(1e-4));
}
