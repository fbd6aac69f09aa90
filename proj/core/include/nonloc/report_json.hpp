#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "nonloc/hypothesis.hpp"
#include "nonloc/solver.hpp"
#include "nonloc/verify.hpp"

namespace nonloc {

using ordered_json = nlohmann::ordered_json;

ordered_json to_json(const HypothesisCertificate& cert);
ordered_json to_json(const CertificateSet& set);
ordered_json to_json(const VerificationReport& report);
ordered_json to_json(const SolveResult& result);

// Serialization with every double printed as %.17g so reports are
// byte-identical across runs.
std::string dump_deterministic(const ordered_json& j, int indent = 2);

void write_json_file(const std::string& path, const ordered_json& j);

}  // namespace nonloc
