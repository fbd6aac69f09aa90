#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace nonloc {

// Periodic lattice on the torus [-B/2, B/2)^d, n points per axis.
struct GridSpec {
  int d = 1;
  int n = 8;
  double box = 1.0;

  double h() const { return box / n; }
  std::int64_t size() const {
    std::int64_t s = 1;
    for (int a = 0; a < d; ++a) s *= n;
    return s;
  }
  // storage index j in [0, n) -> frequency index k in [-n/2, n/2)
  int freq_index(int j) const { return j < n / 2 ? j : j - n; }
  double xi_of(int k) const;
  // row-major flat index -> per-axis storage indices
  void unflatten(std::int64_t flat, int* idx) const;
  std::int64_t flatten(const int* idx) const;
  // lattice point coordinates, x = -B/2 + j h per axis
  std::vector<double> point(std::int64_t flat) const;
  std::int64_t index_of_point_near(const std::vector<double>& x) const;

  bool operator==(const GridSpec&) const = default;
};

void validate(const GridSpec& g);

struct GridFunction {
  GridSpec grid;
  std::vector<double> values;

  double& operator[](std::int64_t i) { return values[i]; }
  double operator[](std::int64_t i) const { return values[i]; }
};

GridFunction zeros(const GridSpec& g);
GridFunction sample(const GridSpec& g,
                    const std::function<double(const std::vector<double>&)>& f);

using Spectrum = std::vector<std::complex<double>>;

// hat u_k = h^d sum_j u_j exp(-i xi_k . x_j), true torus phases included;
// Parseval: sum |u|^2 h^d = sum |hat u|^2 / B^d.
Spectrum dft(const GridFunction& u);
GridFunction idft(const Spectrum& s, const GridSpec& g);
// Inverse without discarding the imaginary part; used by checks that assert
// realness rather than assume it.
std::vector<std::complex<double>> idft_complex(const Spectrum& s,
                                               const GridSpec& g);

// Spectral partial derivative along axis; Nyquist mode dropped for odd orders.
GridFunction derivative(const GridFunction& u, int axis);
GridFunction second_derivative(const GridFunction& u, int axis_a, int axis_b);

// Fraction of spectral energy in the top octave |k|_inf >= n/4.
double top_octave_energy_fraction(const GridFunction& u);

}  // namespace nonloc
