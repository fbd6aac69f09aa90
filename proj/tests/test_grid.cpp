#include <cmath>
#include <complex>
#include <stdexcept>

#include <doctest.h>

#include "nonloc/fieldops.hpp"
#include "nonloc/grid.hpp"

using namespace nonloc;

TEST_CASE("index maps and lattice geometry") {
  GridSpec g{1, 8, 4.0};
  CHECK(g.h() == doctest::Approx(0.5));
  CHECK(g.size() == 8);
  CHECK(g.freq_index(0) == 0);
  CHECK(g.freq_index(3) == 3);
  CHECK(g.freq_index(4) == -4);
  CHECK(g.freq_index(7) == -1);
  CHECK(g.xi_of(1) == doctest::Approx(2.0 * std::acos(-1.0) / 4.0));
  CHECK(g.point(0)[0] == doctest::Approx(-2.0));
  CHECK(g.point(4)[0] == doctest::Approx(0.0));

  GridSpec g3{3, 4, 2.0};
  CHECK(g3.size() == 64);
  int idx[3] = {1, 2, 3};
  const std::int64_t flat = g3.flatten(idx);
  int back[3];
  g3.unflatten(flat, back);
  CHECK(back[0] == 1);
  CHECK(back[1] == 2);
  CHECK(back[2] == 3);
  CHECK(g3.index_of_point_near(g3.point(flat)) == flat);

  CHECK_THROWS_AS(validate(GridSpec{1, 12, 4.0}), std::invalid_argument);
  CHECK_THROWS_AS(validate(GridSpec{4, 8, 4.0}), std::invalid_argument);
  CHECK_THROWS_AS(validate(GridSpec{1, 8, -1.0}), std::invalid_argument);
}

TEST_CASE("dft uses true torus phases") {
  GridSpec g{1, 32, 8.0};
  GridFunction u = zeros(g);
  const double xi1 = g.xi_of(1);
  for (std::int64_t i = 0; i < g.size(); ++i)
    u.values[i] = std::cos(xi1 * g.point(i)[0]);
  const Spectrum s = dft(u);
  // hat u = (B/2) at k = +-1, zero elsewhere
  CHECK(std::abs(s[1] - std::complex<double>(4.0, 0.0)) < 1e-12);
  CHECK(std::abs(s[31] - std::complex<double>(4.0, 0.0)) < 1e-12);
  for (std::int64_t k = 0; k < 32; ++k)
    if (k != 1 && k != 31) CHECK(std::abs(s[k]) < 1e-12);
}

TEST_CASE("parseval and inversion on random data") {
  GridSpec g{2, 16, 4.0};
  GridFunction u = random_band_limited(g, 99);
  const Spectrum s = dft(u);
  double phys = 0.0;
  for (double v : u.values) phys += v * v;
  phys *= std::pow(g.h(), g.d);
  double spec = 0.0;
  for (auto z : s) spec += std::norm(z);
  spec /= std::pow(g.box, g.d);
  CHECK(phys == doctest::Approx(spec).epsilon(1e-12));

  const GridFunction back = idft(s, g);
  for (std::int64_t i = 0; i < g.size(); ++i)
    CHECK(back.values[i] == doctest::Approx(u.values[i]).epsilon(1e-11));
}

TEST_CASE("complex inverse keeps the imaginary part for asymmetric spectra") {
  GridSpec g{1, 8, 8.0};
  Spectrum s(8, {0.0, 0.0});
  s[1] = {1.0, 0.0};  // no Hermitian partner at k = -1
  const auto z = idft_complex(s, g);
  double max_im = 0.0;
  for (auto v : z) max_im = std::max(max_im, std::abs(v.imag()));
  CHECK(max_im > 0.01);
}

TEST_CASE("spectral derivatives of a single mode") {
  GridSpec g{1, 64, 16.0};
  GridFunction u = zeros(g);
  const double xi = g.xi_of(2);
  for (std::int64_t i = 0; i < g.size(); ++i)
    u.values[i] = std::cos(xi * g.point(i)[0]);
  const GridFunction du = derivative(u, 0);
  const GridFunction ddu = second_derivative(u, 0, 0);
  for (std::int64_t i = 0; i < g.size(); ++i) {
    const double x = g.point(i)[0];
    CHECK(du.values[i] == doctest::Approx(-xi * std::sin(xi * x))
                              .epsilon(1e-10).scale(1.0));
    CHECK(ddu.values[i] == doctest::Approx(-xi * xi * std::cos(xi * x))
                               .epsilon(1e-10).scale(1.0));
  }
}

TEST_CASE("top octave energy fraction separates smooth from rough") {
  GridSpec g{1, 64, 16.0};
  const GridFunction smooth = random_band_limited(g, 3);
  CHECK(top_octave_energy_fraction(smooth) == doctest::Approx(0.0));
  GridFunction rough = zeros(g);
  const double xiN = g.xi_of(20);  // |k| = 20 >= n/4 = 16
  for (std::int64_t i = 0; i < g.size(); ++i)
    rough.values[i] = std::cos(xiN * g.point(i)[0]);
  CHECK(top_octave_energy_fraction(rough) == doctest::Approx(1.0));
}
