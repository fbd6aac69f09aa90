#include <cmath>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "nonloc/fieldops.hpp"
#include "nonloc/grid.hpp"
#include "nonloc/kernel.hpp"

using namespace nonloc;

namespace {

GridFunction abs_x(const GridSpec& g) {
  return sample(g, [](const std::vector<double>& x) { return std::abs(x[0]); });
}

}  // namespace

TEST_CASE("lp norms of a sine on an exact period") {
  GridSpec g{1, 64, 2.0 * std::acos(-1.0)};
  const GridFunction u =
      sample(g, [](const std::vector<double>& x) { return std::sin(x[0]); });
  CHECK(lp_norm(u, 2.0) ==
        doctest::Approx(std::sqrt(std::acos(-1.0))).epsilon(1e-12));
  CHECK(lp_norm(u, std::numeric_limits<double>::infinity()) ==
        doctest::Approx(1.0).epsilon(1e-12));
  // |sin| has kinks at lattice nodes, so the lattice L1 sum is second order
  CHECK(lp_norm(u, 1.0) == doctest::Approx(4.0).epsilon(2e-3));
}

TEST_CASE("weighted L1 norm against a hand-summed lattice value") {
  GridSpec g{1, 512, 64.0};
  const GridFunction u = sample(
      g, [](const std::vector<double>& x) { return std::abs(x[0]) <= 2.0; });
  const RadialJumpKernel k = stable_kernel(1, 0.5);
  CHECK(weighted_l1_norm(u, k, 1.0) ==
        doctest::Approx(0.60849023043119799).epsilon(1e-12));
}

TEST_CASE("holder seminorm of |x| is exact on exhaustive balls") {
  GridSpec g{1, 256, 16.0};
  const GridFunction u = abs_x(g);
  const std::int64_t c = g.index_of_point_near({0.0});
  CHECK(holder_seminorm(u, 1.0, c, 2.0) == doctest::Approx(1.0).epsilon(1e-12));
  // alpha = 1/2: the pair (0, 2) dominates, value 2 / 2^{1/2}
  CHECK(holder_seminorm(u, 0.5, c, 2.0) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("ball averages and oscillation of |x|") {
  GridSpec g{1, 512, 64.0};
  const GridFunction u = abs_x(g);
  const std::int64_t c = g.index_of_point_near({0.0});
  // 17 lattice points in [-1, 1]; average 9/17
  CHECK(ball_average(u, c, 1.0) ==
        doctest::Approx(0.52941176470588236).epsilon(1e-12));
  CHECK(mean_oscillation(u, c, 1.0) ==
        doctest::Approx(0.26643598615916952).epsilon(1e-12));
  CHECK(osc(u, c, 1.0) == doctest::Approx(1.0).epsilon(1e-12));

  const GridFunction lin =
      sample(g, [](const std::vector<double>& x) { return x[0]; });
  CHECK(ball_average(lin, c, 1.0) == doctest::Approx(0.0));
}

TEST_CASE("maximal and sharp functions on model data") {
  GridSpec g{1, 512, 16.0};
  GridFunction one = zeros(g);
  for (auto& v : one.values) v = 1.0;
  const std::int64_t mid = g.size() / 2;
  CHECK(maximal_function(one, mid) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(sharp_function(one, mid) == doctest::Approx(0.0));

  // M(1_{[-1,1]})(2): the sup over radii is 1/3, attained at r = 3
  const GridFunction ind = sample(
      g, [](const std::vector<double>& x) { return std::abs(x[0]) <= 1.0; });
  const std::int64_t at2 = g.index_of_point_near({2.0});
  CHECK(maximal_function(ind, at2) ==
        doctest::Approx(0.33678756476683935).epsilon(1e-9));
  CHECK(maximal_function(ind, at2) == doctest::Approx(1.0 / 3.0).epsilon(0.02));
}

TEST_CASE("cone convexity check reproduces quadrature references") {
  auto one = [](const std::vector<double>&) { return 1.0; };

  const ConeConvexityReport r1 =
      cone_convexity_check(0.5, {1.0}, one, 0.015, 0.015);
  CHECK(r1.holds);
  CHECK(r1.lhs == doctest::Approx(-2.2503798157016929e-06).epsilon(1e-5));
  CHECK(r1.rhs == doctest::Approx(-9.9436891104358252e-08).epsilon(1e-5));
  CHECK(r1.margin > 0.0);

  const ConeConvexityReport r2 =
      cone_convexity_check(0.5, {1.0, 0.0}, one, 0.015, 0.015);
  CHECK(r2.holds);
  CHECK(r2.lhs == doctest::Approx(-8.5184638834257105e-09).epsilon(1e-5));
  CHECK(r2.rhs == doctest::Approx(-3.8800297030159538e-10).epsilon(1e-5));
  CHECK(r2.margin > 0.0);
}

TEST_CASE("cone aperture rule") {
  CHECK(cone_aperture_admissible(0.5, 0.015, 0.015));
  CHECK_FALSE(cone_aperture_admissible(0.5, 0.3, 0.3));
  CHECK_FALSE(cone_aperture_admissible(1.2, 0.01, 0.01));  // needs alpha < 1

  auto one = [](const std::vector<double>&) { return 1.0; };
  const ConeConvexityReport rep =
      cone_convexity_check(0.5, {1.0}, one, 0.3, 0.3);
  CHECK_FALSE(rep.holds);
  CHECK(rep.note == "aperture rule violated; check not applicable");
  CHECK_THROWS_AS(cone_convexity_check(0.5, {0.0}, one, 0.015, 0.015),
                  std::invalid_argument);
}

TEST_CASE("band-limited random fields") {
  GridSpec g{1, 64, 16.0};
  const GridFunction u = random_band_limited(g, 7);
  const GridFunction v = random_band_limited(g, 7);
  const GridFunction w = random_band_limited(g, 8);
  CHECK(lp_norm(u, 2.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(u.values == v.values);
  CHECK(u.values != w.values);
  const Spectrum s = dft(u);
  for (int j = 0; j < 64; ++j)
    if (std::abs(g.freq_index(j)) > 8) CHECK(std::abs(s[j]) < 1e-10);
}

TEST_CASE("gaussian bump peak, symmetry, periodization") {
  GridSpec g{1, 64, 8.0};
  const GridFunction u = gaussian_bump(g, {0.0}, 1.5);
  const std::int64_t c = g.index_of_point_near({0.0});
  CHECK(u.values[c] == doctest::Approx(1.0).epsilon(1e-12));
  for (int j = 1; j < 64; ++j)
    CHECK(u.values[j] == doctest::Approx(u.values[64 - j]).epsilon(1e-12));
  // at x = -B/2 the two nearest images contribute equally
  CHECK(u.values[0] ==
        doctest::Approx(2.0 * std::exp(-16.0 / 4.5)).epsilon(1e-6));
  const GridFunction a2 = gaussian_bump(g, {0.0}, 1.5, 3.0);
  CHECK(a2.values[c] == doctest::Approx(3.0).epsilon(1e-12));
}
