#pragma once

// Serialization of audit reports, correlation tables, CHSH rows, and joint
// tables as JSON and CSV. Output is a pure function of its inputs, so equal
// inputs give byte-identical files.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bellaudit/audit.hpp"
#include "bellaudit/inequalities.hpp"

namespace bellaudit {

/// Round-trippable decimal form ("%.17g").
inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline nlohmann::json to_json(const Setting& s) {
  nlohmann::json j;
  j["n"] = s.vector();
  if (s.is_planar()) j["phi"] = s.plane_angle();
  return j;
}

inline nlohmann::json to_json(const Witness& w) {
  nlohmann::json j;
  j["settings"] = {to_json(w.s1), to_json(w.s2)};
  j["atom_index"] = w.atom_index ? nlohmann::json(*w.atom_index) : nlohmann::json(nullptr);
  j["outcomes"] = {w.a ? nlohmann::json(*w.a) : nlohmann::json(nullptr), w.b ? nlohmann::json(*w.b) : nlohmann::json(nullptr)};
  j["lhs"] = w.lhs;
  j["rhs"] = w.rhs;
  j["deviation"] = w.deviation;
  j["note"] = w.note;
  return j;
}

inline nlohmann::json to_json(const AuditReport& r, std::uint64_t seed) {
  nlohmann::json j;
  j["condition"] = r.condition;
  j["verdict"] = to_string(r.verdict);
  j["max_deviation"] = r.max_deviation;
  j["tolerance"] = r.tolerance;
  j["witnesses"] = nlohmann::json::array();
  for (const auto& w : r.witnesses) j["witnesses"].push_back(to_json(w));
  j["grid_spec"] = r.grid_spec;
  j["model_name"] = r.model_name;
  j["seed"] = seed;
  j["points_checked"] = r.points_checked;
  j["points_skipped"] = r.points_skipped;
  if (!r.breakdown.empty()) {
    j["breakdown"] = nlohmann::json::object();
    for (const auto& [k, v] : r.breakdown) j["breakdown"][k] = v;
  }
  if (!r.diagnostic.empty()) j["diagnostic"] = r.diagnostic;
  return j;
}

inline nlohmann::json audit_document(const std::string& model_name, std::uint64_t seed,
                                     const std::vector<AuditReport>& reports,
                                     const std::vector<VerdictMismatch>& mismatches) {
  nlohmann::json j;
  j["model_name"] = model_name;
  j["seed"] = seed;
  j["reports"] = nlohmann::json::array();
  for (const auto& r : reports) j["reports"].push_back(to_json(r, seed));
  j["expected_mismatches"] = nlohmann::json::array();
  for (const auto& m : mismatches)
    j["expected_mismatches"].push_back({{"condition", m.condition},
                                        {"expected", to_string(m.expected)},
                                        {"actual", m.actual ? to_string(*m.actual) : "missing"}});
  return j;
}

/// model,condition,verdict,max_deviation
inline std::string audit_summary_csv(const std::vector<AuditReport>& reports) {
  std::string out = "model,condition,verdict,max_deviation\n";
  for (const auto& r : reports)
    out += csv_quote(r.model_name) + "," + r.condition + "," + to_string(r.verdict) + "," +
           format_double(r.max_deviation) + "\n";
  return out;
}

/// A1,A2,B1,B2,probability (16 rows, A1 slowest).
inline std::string fine_joint_csv(const FineJoint& fj) {
  std::string out = "A1,A2,B1,B2,probability\n";
  for (auto a1 : outcomes())
    for (auto a2 : outcomes())
      for (auto b1 : outcomes())
        for (auto b2 : outcomes())
          out += std::to_string(a1.value()) + "," + std::to_string(a2.value()) + "," + std::to_string(b1.value()) + "," +
                 std::to_string(b2.value()) + "," + format_double(fj.at(a1, a2, b1, b2)) + "\n";
  return out;
}

inline nlohmann::json to_json(const FineJoint& fj) {
  nlohmann::json j;
  j["settings"] = {{"a", to_json(fj.settings.a)},
                   {"a_prime", to_json(fj.settings.a_prime)},
                   {"b", to_json(fj.settings.b)},
                   {"b_prime", to_json(fj.settings.b_prime)}};
  j["rows"] = nlohmann::json::array();
  for (auto a1 : outcomes())
    for (auto a2 : outcomes())
      for (auto b1 : outcomes())
        for (auto b2 : outcomes())
          j["rows"].push_back({{"A1", a1.value()},
                               {"A2", a2.value()},
                               {"B1", b1.value()},
                               {"B2", b2.value()},
                               {"probability", fj.at(a1, a2, b1, b2)}});
  return j;
}

/// target,pair,total_variation,max_entry_deviation,note. The last row per
/// target summarizes (pair = "max").
inline std::string marginal_check_csv(const std::vector<MarginalCheckReport>& reports) {
  std::string out = "target,pair,total_variation,max_entry_deviation,note\n";
  for (const auto& r : reports) {
    for (const auto& p : r.pairs)
      out += csv_quote(r.target_label) + "," + csv_quote(p.pair) + "," + format_double(p.total_variation) + "," +
             format_double(p.max_entry) + ",\n";
    std::string note = std::string("verdict=") + to_string(r.verdict) + "; joint_S=" + format_double(r.joint_chsh);
    if (r.target_chsh) note += "; target_S=" + format_double(*r.target_chsh);
    if (r.impossibility_witness) note += "; impossibility witness: " + r.witness;
    out += csv_quote(r.target_label) + ",max," + format_double(r.max_total_variation) + "," +
           format_double(r.max_entry_deviation) + "," + csv_quote(note) + "\n";
  }
  return out;
}

inline nlohmann::json to_json(const MarginalCheckReport& r) {
  nlohmann::json j;
  j["target"] = r.target_label;
  j["pairs"] = nlohmann::json::array();
  for (const auto& p : r.pairs)
    j["pairs"].push_back({{"pair", p.pair}, {"total_variation", p.total_variation}, {"max_entry_deviation", p.max_entry}});
  j["max_total_variation"] = r.max_total_variation;
  j["max_entry_deviation"] = r.max_entry_deviation;
  j["worst_pair"] = r.worst_pair;
  j["tolerance"] = r.tolerance;
  j["verdict"] = to_string(r.verdict);
  j["joint_chsh"] = r.joint_chsh;
  j["target_chsh"] = r.target_chsh ? nlohmann::json(*r.target_chsh) : nlohmann::json(nullptr);
  j["impossibility_witness"] = r.impossibility_witness;
  if (r.impossibility_witness) j["witness"] = r.witness;
  return j;
}

struct ChshRow {
  std::string model;
  ChshSpec spec;
  double s = 0.0;
};

/// model,a,a_prime,b,b_prime,S (angles in radians; out-of-plane settings
/// are written as x:y:z).
inline std::string chsh_csv(const std::vector<ChshRow>& rows) {
  const auto angle = [](const Setting& s) {
    if (s.is_planar()) return format_double(s.plane_angle());
    const auto& n = s.vector();
    return format_double(n[0]) + ":" + format_double(n[1]) + ":" + format_double(n[2]);
  };
  std::string out = "model,a,a_prime,b,b_prime,S\n";
  for (const auto& r : rows)
    out += csv_quote(r.model) + "," + angle(r.spec.a) + "," + angle(r.spec.a_prime) + "," + angle(r.spec.b) + "," +
           angle(r.spec.b_prime) + "," + format_double(r.s) + "\n";
  return out;
}

struct CorrelationRow {
  double delta = 0.0;
  double e_model = 0.0;
  double e_quantum = 0.0;
  std::array<double, 4> joint_model{};
  std::array<double, 4> joint_quantum{};
};

/// delta_radians,E_model,E_quantum,abs_difference
inline std::string correlation_csv(const std::vector<CorrelationRow>& rows) {
  std::string out = "delta_radians,E_model,E_quantum,abs_difference\n";
  for (const auto& r : rows)
    out += format_double(r.delta) + "," + format_double(r.e_model) + "," + format_double(r.e_quantum) + "," +
           format_double(std::abs(r.e_model - r.e_quantum)) + "\n";
  return out;
}

/// Writes to a sibling temp file and renames it over `path`.
inline void write_file_atomically(const std::string& path, const std::string& content) {
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot open '" + tmp.string() + "' for writing");
    f << content;
    f.flush();
    if (!f) throw Error("failed writing '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, target);
}

}  // namespace bellaudit
