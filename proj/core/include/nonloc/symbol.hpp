#pragma once

#include <complex>
#include <string>
#include <vector>

#include "nonloc/grid.hpp"
#include "nonloc/operator_spec.hpp"

namespace nonloc {

struct PsiOptions {
  double rel_tol = 1e-9;
  int order = 16;           // radial Gauss nodes per panel
  int angular_points = 256; // d = 2 circle rule for non-radial coefficients
};

// Psi(xi) = int (1 - cos xi.y) J(y) dy; radial in |xi|, cached per kernel
// label and |xi|.
double psi(const RadialJumpKernel& kernel, int d, double xi_mag,
           const PsiOptions& opt = {});
double psi(const RadialJumpKernel& kernel, int d,
           const std::vector<double>& xi, const PsiOptions& opt = {});

struct SymbolTable {
  GridSpec grid;
  OperatorVariant variant = OperatorVariant::A;
  std::vector<std::complex<double>> values;  // m(xi_k), storage order of dft

  std::complex<double> at(std::int64_t flat) const { return values[flat]; }
};

// m(xi) = int (e^{i xi.y} - 1 - i y.xi chi(y)) a(y) J(y) dy on the frequency
// lattice.  Hermitian symmetry enforced; results cached per (spec key, grid).
// For sigma = 1 the caller must hold a cancellation certificate
// (cancellation_certified); otherwise the build refuses.
SymbolTable full_symbol(const OperatorSpec& spec, const GridSpec& grid,
                        bool cancellation_certified = false,
                        const PsiOptions& opt = {});

struct SymbolKernelBoundReport {
  double sup_ratio = 0.0;
  double sup_ratio_refined = 0.0;
  bool pass = false;
  std::string note;
};

// sup over |xi| in [1e-2, 1e2] of j(|xi|) |xi|^d / Psi(1/|xi|), with a
// doubled-grid stability check.
SymbolKernelBoundReport check_symbol_kernel_bound(
    const RadialJumpKernel& kernel, int d, const PsiOptions& opt = {});

// Stable cache key for a spec on a grid.
std::string spec_cache_key(const OperatorSpec& spec);

}  // namespace nonloc
