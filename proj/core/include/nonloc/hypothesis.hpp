#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nonloc/kernel.hpp"
#include "nonloc/operator_spec.hpp"

namespace nonloc {

enum class Verdict { Pass, Fail, Inconclusive };

std::string verdict_name(Verdict v);

struct HypothesisCertificate {
  std::string id;  // LEVY | SIGMA | H1 | H2 | H3ii | H3iii | H3iv | CANCEL |
                   // SYMBOL-GROWTH | TWO-SIDED
  Verdict verdict = Verdict::Inconclusive;
  std::map<std::string, double> constants;  // kappa1, alpha0, kappa2, ...
  std::string grid_note;   // sample grid that produced the constants
  double worst_ratio = 0.0;
  std::string diagnostic;

  bool passed() const { return verdict == Verdict::Pass; }
};

struct SweepOptions {
  int points_per_decade = 64;
  double slack = 1.02;
};

HypothesisCertificate check_levy(const RadialJumpKernel& kernel, int d);

struct SigmaEstimate {
  double sigma = 0.0;
  double uncertainty = 0.05;
  std::optional<double> analytic;  // kernel metadata when present
  bool disagreement = false;
  Verdict verdict = Verdict::Pass;
  std::string diagnostic;
};

SigmaEstimate estimate_sigma(const RadialJumpKernel& kernel, int d);

HypothesisCertificate check_H1(const RadialJumpKernel& kernel, int d,
                               double sigma, const SweepOptions& opt = {});

HypothesisCertificate check_H2(const RadialJumpKernel& kernel, int d,
                               double sigma, const SweepOptions& opt = {});

// variant selects the clause: ii (inner first-moment symmetry, sigma < 1),
// iii (tail moment domination, sigma < 1), iv (outer symmetry, sigma > 1).
enum class H3Clause { ii, iii, iv };

HypothesisCertificate check_H3(const OperatorSpec& spec, H3Clause clause,
                               const SweepOptions& opt = {});

HypothesisCertificate check_cancellation(const OperatorSpec& spec,
                                         const SweepOptions& opt = {});

HypothesisCertificate check_two_sided(const RadialJumpKernel& kernel, int d,
                                      double sigma,
                                      const SweepOptions& opt = {});

HypothesisCertificate check_symbol_growth(const BernsteinFunction& phi,
                                          double alpha_target,
                                          const SweepOptions& opt = {});

// The certificate bundle consumed by solver/verify pipelines.
struct CertificateSet {
  std::vector<HypothesisCertificate> items;

  const HypothesisCertificate* find(const std::string& id) const;
  bool passed(const std::string& id) const;
};

// Runs the full battery appropriate for the spec (LEVY, SIGMA, H1, H2,
// CANCEL when sigma = 1, H3 clauses by regime).
CertificateSet certify(const OperatorSpec& spec);

}  // namespace nonloc
