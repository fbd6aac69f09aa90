#include "nonloc/report_json.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

namespace nonloc {

namespace {

std::string fmt_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// nlohmann's own double printer is shortest-round-trip; reports pin %.17g so
// byte-for-byte comparison across runs never hinges on formatting choices.
void render(const ordered_json& j, std::string& out, int indent, int depth) {
  const std::string pad(std::size_t(indent) * depth, ' ');
  const std::string pad_in(std::size_t(indent) * (depth + 1), ' ');
  switch (j.type()) {
    case ordered_json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      std::size_t i = 0;
      for (auto it = j.begin(); it != j.end(); ++it, ++i) {
        out += pad_in;
        out += ordered_json(it.key()).dump();
        out += ": ";
        render(it.value(), out, indent, depth + 1);
        if (i + 1 < j.size()) out += ",";
        out += "\n";
      }
      out += pad + "}";
      return;
    }
    case ordered_json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        out += pad_in;
        render(j[i], out, indent, depth + 1);
        if (i + 1 < j.size()) out += ",";
        out += "\n";
      }
      out += pad + "]";
      return;
    }
    case ordered_json::value_t::number_float:
      out += fmt_double(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

}  // namespace

ordered_json to_json(const HypothesisCertificate& cert) {
  ordered_json j;
  j["id"] = cert.id;
  j["verdict"] = verdict_name(cert.verdict);
  ordered_json c = ordered_json::object();
  for (const auto& [k, v] : cert.constants) c[k] = v;
  j["constants"] = c;
  j["worst_ratio"] = cert.worst_ratio;
  j["grid_note"] = cert.grid_note;
  j["diagnostic"] = cert.diagnostic;
  return j;
}

ordered_json to_json(const CertificateSet& set) {
  ordered_json arr = ordered_json::array();
  bool all = true;
  for (const auto& c : set.items) {
    arr.push_back(to_json(c));
    if (c.verdict != Verdict::Pass) all = false;
  }
  ordered_json j;
  j["certificates"] = arr;
  j["all_passed"] = all;
  return j;
}

ordered_json to_json(const VerificationReport& report) {
  ordered_json j;
  j["estimate_id"] = report.estimate_id;
  j["verdict"] = verdict_name(report.verdict);
  j["worst_ratio"] = report.worst_ratio;
  j["refinement_stable"] = report.refinement_stable;
  j["ensemble_note"] = report.ensemble_note;
  j["diagnostic"] = report.diagnostic;
  ordered_json trials = ordered_json::array();
  for (const auto& t : report.trials) {
    ordered_json r;
    r["trial"] = t.trial;
    ordered_json q = ordered_json::object();
    for (const auto& [k, v] : t.quantities) q[k] = v;
    r["quantities"] = q;
    trials.push_back(std::move(r));
  }
  j["trials"] = trials;
  return j;
}

ordered_json to_json(const SolveResult& result) {
  ordered_json j;
  j["method"] = result.method;
  j["residual"] = result.residual;
  ordered_json d = ordered_json::object();
  for (const auto& [k, v] : result.diagnostics) d[k] = v;
  j["diagnostics"] = d;
  ordered_json g;
  g["d"] = result.u.grid.d;
  g["n"] = result.u.grid.n;
  g["box"] = result.u.grid.box;
  j["grid"] = g;
  return j;
}

std::string dump_deterministic(const ordered_json& j, int indent) {
  std::string out;
  render(j, out, indent, 0);
  return out;
}

void write_json_file(const std::string& path, const ordered_json& j) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  os << dump_deterministic(j) << "\n";
  if (!os) throw std::runtime_error("write failed: " + path);
}

}  // namespace nonloc
