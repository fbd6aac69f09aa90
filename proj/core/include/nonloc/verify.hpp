#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "nonloc/grid.hpp"
#include "nonloc/hypothesis.hpp"
#include "nonloc/operator_spec.hpp"

namespace nonloc {

struct TrialRecord {
  std::int64_t trial = 0;
  std::map<std::string, double> quantities;  // lhs, rhs, ratio, lambda, p, ...
};

struct VerificationReport {
  std::string estimate_id;
  std::string ensemble_note;
  std::vector<TrialRecord> trials;
  double worst_ratio = 0.0;
  bool refinement_stable = true;
  Verdict verdict = Verdict::Inconclusive;
  std::string diagnostic;

  bool passed() const { return verdict == Verdict::Pass; }
};

// Shared ensemble configuration.  Specs are built per trial from the kernel
// and coefficient descriptions; seeds derive from base_seed + trial.
struct EnsembleConfig {
  int d = 1;
  int n = 512;
  double box = 64.0;
  int trials = 50;
  std::uint64_t base_seed = 7;
  std::vector<double> lambdas = {0.5, 1.0, 4.0};
  std::vector<double> ps = {1.5, 2.0, 3.0};
  double nu = 0.5;
  double Lambda = 2.0;
  // kernel under test
  RadialJumpKernel kernel;
  double sigma = 0.5;
  bool random_coefficient = true;
  bool cancellation_certified = false;
};

// lambda ||u||_p <= 1.05 ||f||_p over the ensemble, L and L-tilde variants.
VerificationReport verify_resolvent_bound(const EnsembleConfig& cfg);

// ||Au||_2 <= 1.05 (sqrt2/nu) ||f||_2 and lambda ||u||_2 <= 1.05 sqrt2 ||f||_2.
VerificationReport verify_L2(const EnsembleConfig& cfg);

// Monitored constant sup (||Au||_p + lambda ||u||_p) / ||f||_p; pass iff
// refinement-stable (<= x2 under n doubling) and lambda-uniform (<= x1.5
// spread over the lambda set).
VerificationReport verify_Lp(const EnsembleConfig& cfg);

// f <= 0  =>  min u >= -1e-8 ||f||_inf, plus the f = 0 => u = 0 face.
VerificationReport verify_positivity_max_principle(const EnsembleConfig& cfg);

struct HolderSuiteConfig {
  EnsembleConfig base;
  double alpha = 0.3;  // must lie in (0, min(1, alpha0))
  double alpha0 = 0.5;
  double R = 1.0;
};

// [u]_{C^alpha(B_{R/2})} vs (weighted L1 + osc f) / (j(R) R^{d+alpha}).
VerificationReport verify_holder(const HolderSuiteConfig& cfg);

struct SharpOscillationConfig {
  EnsembleConfig base;
  double alpha = 0.3;
  std::vector<double> kappas = {2.0, 4.0, 8.0, 16.0};
  double r = 0.5;
};

// Mean oscillation of u and Au at 0 vs kappa^{-alpha} (lambda Mu + M(Au)) +
// kappa^{d/2} sqrt(M(f^2)).
VerificationReport verify_sharp_oscillation(const SharpOscillationConfig& cfg);

// sup ||Lu||_p / ||Au||_p over band-limited u; p = 2 cross-checked against
// the symbol ratio sup |m_L| / Psi.
VerificationReport verify_operator_continuity(const EnsembleConfig& cfg);

}  // namespace nonloc
