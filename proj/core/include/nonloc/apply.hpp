#pragma once

#include <string>

#include "nonloc/grid.hpp"
#include "nonloc/operator_spec.hpp"
#include "nonloc/symbol.hpp"

namespace nonloc {

struct ApplyOptions {
  double delta_factor = 2.0;   // inner cutoff delta = factor * h
  double tail_rel_tol = 1e-12;
  int order = 16;
  int angular_points = 64;     // d = 2 product rule in the mid zone
  bool cancellation_certified = false;
};

struct ApplyResult {
  GridFunction out;
  double error_budget = 0.0;   // inner-zone Taylor remainder estimate
  std::string warning;         // set when the band-limit precondition fails
};

// Physical-space evaluation by singular quadrature, independent of the
// symbol pathway.  Zones: |y| < delta handled by kernel moments against
// spectral derivatives of u; delta <= |y| < B/4 by radial-angular product
// quadrature with trigonometric interpolation of u; |y| >= B/4 by periodic
// shell quadrature until the kernel tail is exhausted.
ApplyResult apply_direct(const OperatorSpec& spec, const GridFunction& u,
                         const ApplyOptions& opt = {});

// idft(m . dft(u)) with Hermitian symmetrization of the table.
GridFunction apply_spectral(const SymbolTable& table, const GridFunction& u);

}  // namespace nonloc
