#pragma once

// Declarative model definitions and their JSON file format.
//
//   {
//     "name": "half-pinned",
//     "kernel_form": "factorized",          // "factorized" | "joint"
//     "kernel": "cosine-response",          // "cosine-response" | "sign-response" | "born"
//     "atoms": [
//       {"weight": "1/2", "theta1": "phi1", "theta2": "phi1 + pi"},
//       {"weight": "1/2", "theta1": "phi1 + pi", "theta2": "phi1", "lambda": "0"}
//     ],
//     "expected": {"measurement-independence": "violated"}   // optional
//   }
//
// Weights are exact rationals (string "p/q", integer, or a decimal literal)
// and must sum to exactly 1. Angles use the grammar in angles.hpp. Unknown
// keys are rejected. See docs/model-format.md for the full grammar.

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bellaudit/angles.hpp"
#include "bellaudit/audit.hpp"
#include "bellaudit/models.hpp"

namespace bellaudit {

enum class KernelPreset { cosine_response, sign_response, born };

inline const char* to_string(KernelPreset k) {
  switch (k) {
    case KernelPreset::cosine_response: return "cosine-response";
    case KernelPreset::sign_response: return "sign-response";
    case KernelPreset::born: return "born";
  }
  return "?";
}

struct AtomDefinition {
  Rational weight;
  AngleExpr theta1;
  AngleExpr theta2;
  std::optional<AngleExpr> lambda;
};

struct ModelDefinition {
  std::string name;
  KernelForm form = KernelForm::factorized;
  KernelPreset kernel = KernelPreset::cosine_response;
  std::vector<AtomDefinition> atoms;
  ExpectedVerdicts expected;
};

inline void validate(const ModelDefinition& def) {
  if (def.name.empty()) throw MalformedModel("model definition needs a name");
  if (def.atoms.empty()) throw MalformedModel("model '" + def.name + "' has no atoms");
  const bool wants_joint = def.kernel == KernelPreset::born;
  if (wants_joint != (def.form == KernelForm::joint))
    throw MalformedModel("model '" + def.name + "': kernel '" + to_string(def.kernel) +
                         "' is incompatible with kernel_form '" + to_string(def.form) + "'");
  Rational total;
  for (const auto& a : def.atoms) {
    if (a.weight.num() < 0) throw MalformedModel("model '" + def.name + "': negative atom weight");
    if (a.lambda && a.lambda->depends_on_settings())
      throw MalformedModel("model '" + def.name + "': lambda may not depend on settings");
    total = total + a.weight;
  }
  if (!(total == Rational(1)))
    throw MalformedModel("model '" + def.name + "': weights sum to " + total.to_string() + ", not 1");
}

/// Turns a definition into an evaluable model. Atom angles are evaluated at
/// the planar setting angles when they reference phi1 or phi2.
inline BeableModel build_model(const ModelDefinition& def) {
  validate(def);
  BeableModel m;
  m.name = def.name;
  m.form = def.form;
  const std::vector<AtomDefinition> atoms = def.atoms;
  bool uses_settings = false;
  for (const auto& a : atoms) uses_settings = uses_settings || a.theta1.depends_on_settings() || a.theta2.depends_on_settings();

  m.density = [atoms, uses_settings](const Setting& s1, const Setting& s2, const TwoQubitState&) {
    const double phi1 = uses_settings ? s1.plane_angle() : 0.0;
    const double phi2 = uses_settings ? s2.plane_angle() : 0.0;
    BeableDensity d;
    for (const auto& a : atoms) {
      std::optional<double> lambda;
      if (a.lambda) lambda = a.lambda->evaluate(0.0, 0.0);
      d.atoms.push_back(make_atom(a.weight.to_double(), a.theta1.evaluate(phi1, phi2), a.theta2.evaluate(phi1, phi2), lambda));
    }
    return d;
  };
  switch (def.kernel) {
    case KernelPreset::cosine_response:
      m.alice = kernels::cosine_alice();
      m.bob = kernels::cosine_bob();
      break;
    case KernelPreset::sign_response:
      m.alice = kernels::sign_alice();
      m.bob = kernels::sign_bob();
      break;
    case KernelPreset::born:
      m.joint = kernels::born();
      break;
  }
  return m;
}

// ---------------------------------------------------------------------------
// JSON

namespace detail {

inline std::string scalar_text(const nlohmann::json& j, const std::string& field) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer() || j.is_number_unsigned()) return j.dump();
  if (j.is_number_float()) return j.dump();
  throw ParseError("field '" + field + "' must be a string or number");
}

inline void reject_unknown_keys(const nlohmann::json& obj, std::initializer_list<const char*> allowed,
                                const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw ParseError(where + ": unknown key '" + key + "'");
  }
}

}  // namespace detail

inline ModelDefinition parse_model_definition(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("model definition must be a JSON object");
  detail::reject_unknown_keys(j, {"name", "kernel_form", "kernel", "atoms", "expected"}, "model definition");
  for (const char* key : {"name", "kernel_form", "kernel", "atoms"})
    if (!j.contains(key)) throw ParseError(std::string("model definition: missing '") + key + "'");

  ModelDefinition def;
  if (!j["name"].is_string()) throw ParseError("'name' must be a string");
  def.name = j["name"].get<std::string>();

  const std::string form = j["kernel_form"].is_string() ? j["kernel_form"].get<std::string>() : "";
  if (form == "factorized") def.form = KernelForm::factorized;
  else if (form == "joint") def.form = KernelForm::joint;
  else throw ParseError("'kernel_form' must be \"factorized\" or \"joint\"");

  const std::string kernel = j["kernel"].is_string() ? j["kernel"].get<std::string>() : "";
  if (kernel == "cosine-response") def.kernel = KernelPreset::cosine_response;
  else if (kernel == "sign-response") def.kernel = KernelPreset::sign_response;
  else if (kernel == "born") def.kernel = KernelPreset::born;
  else throw ParseError("'kernel' must be one of cosine-response, sign-response, born");

  if (!j["atoms"].is_array()) throw ParseError("'atoms' must be an array");
  for (const auto& a : j["atoms"]) {
    if (!a.is_object()) throw ParseError("each atom must be an object");
    detail::reject_unknown_keys(a, {"weight", "theta1", "theta2", "lambda"}, "atom");
    for (const char* key : {"weight", "theta1", "theta2"})
      if (!a.contains(key)) throw ParseError(std::string("atom: missing '") + key + "'");
    AtomDefinition atom;
    atom.weight = parse_rational(detail::scalar_text(a["weight"], "weight"));
    atom.theta1 = parse_angle_expr(detail::scalar_text(a["theta1"], "theta1"));
    atom.theta2 = parse_angle_expr(detail::scalar_text(a["theta2"], "theta2"));
    if (a.contains("lambda")) atom.lambda = parse_angle_expr(detail::scalar_text(a["lambda"], "lambda"), false);
    def.atoms.push_back(atom);
  }

  if (j.contains("expected")) {
    if (!j["expected"].is_object()) throw ParseError("'expected' must be an object");
    for (const auto& [cond, v] : j["expected"].items()) {
      const auto verdict = v.is_string() ? parse_verdict(v.get<std::string>()) : std::nullopt;
      if (!verdict) throw ParseError("expected verdict for '" + cond + "' must be holds, violated or not-applicable");
      def.expected[cond] = *verdict;
    }
  }
  validate(def);
  return def;
}

inline nlohmann::json to_json(const ModelDefinition& def) {
  nlohmann::json j;
  j["name"] = def.name;
  j["kernel_form"] = to_string(def.form);
  j["kernel"] = to_string(def.kernel);
  j["atoms"] = nlohmann::json::array();
  for (const auto& a : def.atoms) {
    nlohmann::json atom;
    atom["weight"] = a.weight.to_string();
    atom["theta1"] = a.theta1.to_string();
    atom["theta2"] = a.theta2.to_string();
    if (a.lambda) atom["lambda"] = a.lambda->to_string();
    j["atoms"].push_back(atom);
  }
  if (!def.expected.empty()) {
    j["expected"] = nlohmann::json::object();
    for (const auto& [cond, v] : def.expected) j["expected"][cond] = to_string(v);
  }
  return j;
}

inline ModelDefinition parse_model_definition(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("model file is not valid JSON: ") + e.what());
  }
  return parse_model_definition(j);
}

inline ModelDefinition load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open model file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model_definition(buf.str());
}

}  // namespace bellaudit
