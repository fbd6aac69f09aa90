#include "nonloc/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <stdexcept>

namespace nonloc {

double GridSpec::xi_of(int k) const { return 2.0 * M_PI * k / box; }

void GridSpec::unflatten(std::int64_t flat, int* idx) const {
  for (int a = d - 1; a >= 0; --a) {
    idx[a] = static_cast<int>(flat % n);
    flat /= n;
  }
}

std::int64_t GridSpec::flatten(const int* idx) const {
  std::int64_t f = 0;
  for (int a = 0; a < d; ++a) f = f * n + idx[a];
  return f;
}

std::vector<double> GridSpec::point(std::int64_t flat) const {
  int idx[3];
  unflatten(flat, idx);
  std::vector<double> x(d);
  for (int a = 0; a < d; ++a) x[a] = -0.5 * box + idx[a] * h();
  return x;
}

std::int64_t GridSpec::index_of_point_near(const std::vector<double>& x) const {
  int idx[3];
  for (int a = 0; a < d; ++a) {
    long j = std::lround((x[a] + 0.5 * box) / h());
    j %= n;
    if (j < 0) j += n;
    idx[a] = static_cast<int>(j);
  }
  return flatten(idx);
}

void validate(const GridSpec& g) {
  if (g.d < 1 || g.d > 3) throw std::invalid_argument("grid dimension must be 1, 2 or 3");
  if (g.n < 8 || g.n % 2 != 0)
    throw std::invalid_argument("grid needs n >= 8 and even");
  if (!(g.box > 0.0)) throw std::invalid_argument("box side must be positive");
}

GridFunction zeros(const GridSpec& g) {
  validate(g);
  GridFunction u;
  u.grid = g;
  u.values.assign(g.size(), 0.0);
  return u;
}

GridFunction sample(const GridSpec& g,
                    const std::function<double(const std::vector<double>&)>& f) {
  GridFunction u = zeros(g);
  const std::int64_t m = g.size();
  for (std::int64_t i = 0; i < m; ++i) u.values[i] = f(g.point(i));
  return u;
}

namespace {

// Parity of the frequency-index sum; converts between FFTW's x-from-0
// convention and the centered torus coordinates.
int mode_parity(const GridSpec& g, std::int64_t flat) {
  int idx[3];
  g.unflatten(flat, idx);
  int s = 0;
  for (int a = 0; a < g.d; ++a) s += g.freq_index(idx[a]) & 1;
  return s & 1;
}

void run_fftw(const GridSpec& g, std::vector<std::complex<double>>& data,
              int sign) {
  fftw_complex* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan = nullptr;
  switch (g.d) {
    case 1:
      plan = fftw_plan_dft_1d(g.n, ptr, ptr, sign, FFTW_ESTIMATE);
      break;
    case 2:
      plan = fftw_plan_dft_2d(g.n, g.n, ptr, ptr, sign, FFTW_ESTIMATE);
      break;
    default:
      plan = fftw_plan_dft_3d(g.n, g.n, g.n, ptr, ptr, sign, FFTW_ESTIMATE);
  }
  if (!plan) throw std::runtime_error("fftw plan creation failed");
  fftw_execute(plan);
  fftw_destroy_plan(plan);
}

}  // namespace

Spectrum dft(const GridFunction& u) {
  const GridSpec& g = u.grid;
  validate(g);
  const std::int64_t m = g.size();
  if (static_cast<std::int64_t>(u.values.size()) != m)
    throw std::invalid_argument("value count does not match grid");
  Spectrum s(m);
  for (std::int64_t i = 0; i < m; ++i) s[i] = u.values[i];
  run_fftw(g, s, FFTW_FORWARD);
  const double hd = std::pow(g.h(), g.d);
  for (std::int64_t i = 0; i < m; ++i)
    s[i] *= mode_parity(g, i) ? -hd : hd;
  return s;
}

std::vector<std::complex<double>> idft_complex(const Spectrum& s,
                                               const GridSpec& g) {
  validate(g);
  const std::int64_t m = g.size();
  if (static_cast<std::int64_t>(s.size()) != m)
    throw std::invalid_argument("spectrum size does not match grid");
  std::vector<std::complex<double>> t(s);
  for (std::int64_t i = 0; i < m; ++i)
    if (mode_parity(g, i)) t[i] = -t[i];
  run_fftw(g, t, FFTW_BACKWARD);
  const double scale = 1.0 / std::pow(g.box, g.d);
  for (auto& v : t) v *= scale;
  return t;
}

GridFunction idft(const Spectrum& s, const GridSpec& g) {
  auto t = idft_complex(s, g);
  GridFunction u = zeros(g);
  for (std::int64_t i = 0; i < g.size(); ++i) u.values[i] = t[i].real();
  return u;
}

GridFunction derivative(const GridFunction& u, int axis) {
  const GridSpec& g = u.grid;
  if (axis < 0 || axis >= g.d) throw std::invalid_argument("axis out of range");
  Spectrum s = dft(u);
  int idx[3];
  for (std::int64_t i = 0; i < g.size(); ++i) {
    g.unflatten(i, idx);
    const int k = g.freq_index(idx[axis]);
    if (k == -g.n / 2) {
      s[i] = 0.0;  // Nyquist has no well-defined odd derivative
    } else {
      s[i] *= std::complex<double>(0.0, g.xi_of(k));
    }
  }
  return idft(s, g);
}

GridFunction second_derivative(const GridFunction& u, int axis_a, int axis_b) {
  const GridSpec& g = u.grid;
  if (axis_a < 0 || axis_a >= g.d || axis_b < 0 || axis_b >= g.d)
    throw std::invalid_argument("axis out of range");
  Spectrum s = dft(u);
  int idx[3];
  for (std::int64_t i = 0; i < g.size(); ++i) {
    g.unflatten(i, idx);
    const int ka = g.freq_index(idx[axis_a]);
    const int kb = g.freq_index(idx[axis_b]);
    if (axis_a != axis_b && (ka == -g.n / 2 || kb == -g.n / 2)) {
      s[i] = 0.0;
    } else {
      s[i] *= -g.xi_of(ka) * g.xi_of(kb);
    }
  }
  return idft(s, g);
}

double top_octave_energy_fraction(const GridFunction& u) {
  const GridSpec& g = u.grid;
  Spectrum s = dft(u);
  double total = 0.0, top = 0.0;
  int idx[3];
  for (std::int64_t i = 0; i < g.size(); ++i) {
    g.unflatten(i, idx);
    int kmax = 0;
    for (int a = 0; a < g.d; ++a)
      kmax = std::max(kmax, std::abs(g.freq_index(idx[a])));
    const double e = std::norm(s[i]);
    total += e;
    if (kmax >= g.n / 4) top += e;
  }
  return total > 0.0 ? top / total : 0.0;
}

}  // namespace nonloc
