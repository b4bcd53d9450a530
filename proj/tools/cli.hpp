#pragma once

// bellaudit command-line front end. `run_cli` takes the output streams as
// parameters; main() passes std::cout and std::cerr.
//
// Exit codes: 0 success / expectations met, 1 expectation mismatch or
// ineligible model, 2 malformed input or unknown model.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "bellaudit/angles.hpp"
#include "bellaudit/audit.hpp"
#include "bellaudit/inequalities.hpp"
#include "bellaudit/model_file.hpp"
#include "bellaudit/models.hpp"
#include "bellaudit/report_io.hpp"

namespace bellaudit::cli {

enum class OutputFormat { csv, json };

struct RunConfig {
  std::string model;
  std::string grid_step = "1/18 pi";
  std::optional<double> tolerance;
  std::uint64_t seed = 0;
  std::string output_path;
  std::string format = "csv";
  std::string spec;
  std::string state = "singlet";
};

struct ResolvedModel {
  BeableModel model;
  ExpectedVerdicts expected;
};

/// Built-in name, or a path to a model definition file.
inline ResolvedModel resolve_model(const std::string& name_or_path) {
  if (auto m = builtin_model(name_or_path)) return {*m, expected_verdicts(name_or_path)};
  if (!name_or_path.empty() && std::filesystem::is_regular_file(name_or_path)) {
    const ModelDefinition def = load_model_file(name_or_path);
    return {build_model(def), def.expected};
  }
  std::string known;
  for (const auto& n : builtin_model_names()) known += (known.empty() ? "" : ", ") + n;
  throw ParseError("unknown model '" + name_or_path + "' (built-ins: " + known + ")");
}

inline double parse_grid_step(const std::string& text) {
  const double step = parse_angle(text);
  SettingsGrid::planar(step);  // validates that the step divides 2pi
  return step;
}

/// "a,a',b,b'" with each angle in the angle grammar.
inline ChshSpec parse_spec(const std::string& text) {
  if (text.empty()) return ChshSpec::optimal();
  std::vector<double> angles;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) angles.push_back(parse_angle(item));
  if (angles.size() != 4) throw ParseError("--spec needs four comma-separated angles a,a',b,b'");
  return ChshSpec::planar(angles[0], angles[1], angles[2], angles[3]);
}

inline TwoQubitState parse_state(const std::string& name) {
  if (name == "singlet") return singlet();
  if (name == "product-up-down") return TwoQubitState::product_z(Outcome::plus(), Outcome::minus());
  if (name == "product-up-up") return TwoQubitState::product_z(Outcome::plus(), Outcome::plus());
  throw ParseError("unknown state '" + name + "' (singlet, product-up-down, product-up-up)");
}

inline OutputFormat parse_format(const std::string& f) {
  if (f == "csv") return OutputFormat::csv;
  if (f == "json") return OutputFormat::json;
  throw ParseError("--format must be csv or json");
}

inline AuditOptions audit_options(const RunConfig& cfg) {
  AuditOptions opt;
  if (cfg.tolerance) opt.tolerance = *cfg.tolerance;
  return opt;
}

/// Writes to --out atomically, or to `out` when no path was given.
inline void emit(const RunConfig& cfg, const std::string& content, std::ostream& out) {
  if (cfg.output_path.empty()) out << content;
  else write_file_atomically(cfg.output_path, content);
}

inline std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Subcommands

inline int cmd_audit(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const ResolvedModel rm = resolve_model(cfg.model);
  const OutputFormat fmt = parse_format(cfg.format);
  const SettingsGrid grid = SettingsGrid::planar(parse_grid_step(cfg.grid_step));
  const TwoQubitState psi = parse_state(cfg.state);

  const auto reports = full_audit(rm.model, psi, grid, audit_options(cfg));
  const auto mismatches = compare_verdicts(reports, rm.expected);

  const std::string body = fmt == OutputFormat::json
                               ? dump(audit_document(rm.model.name, cfg.seed, reports, mismatches))
                               : audit_summary_csv(reports);
  emit(cfg, body, out);
  if (!cfg.output_path.empty()) out << audit_summary_csv(reports);
  for (const auto& m : mismatches)
    err << "expectation mismatch: " << m.condition << " expected " << to_string(m.expected) << ", got "
        << (m.actual ? to_string(*m.actual) : "missing") << "\n";
  return mismatches.empty() ? 0 : 1;
}

inline int cmd_correlate(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const ResolvedModel rm = resolve_model(cfg.model);
  const OutputFormat fmt = parse_format(cfg.format);
  const double step = parse_grid_step(cfg.grid_step);
  const TwoQubitState psi = parse_state(cfg.state);
  const auto n = static_cast<std::size_t>(std::round(kTwoPi / step));

  std::vector<CorrelationRow> rows;
  const Setting s2 = Setting::from_angle(0.0);
  for (std::size_t k = 0; k < n; ++k) {
    CorrelationRow r;
    r.delta = static_cast<double>(k) * step;
    const Setting s1 = Setting::from_angle(r.delta);
    r.joint_model = model_joint_table(rm.model, s1, s2, psi);
    r.joint_quantum = born_table(psi, s1, s2);
    r.e_model = correlation_of(r.joint_model);
    r.e_quantum = correlation_of(r.joint_quantum);
    rows.push_back(r);
  }

  if (fmt == OutputFormat::csv) {
    emit(cfg, correlation_csv(rows), out);
  } else {
    nlohmann::json j;
    j["model_name"] = rm.model.name;
    j["seed"] = cfg.seed;
    j["settings"] = "phi1 = delta, phi2 = 0";
    j["rows"] = nlohmann::json::array();
    for (const auto& r : rows)
      j["rows"].push_back({{"delta_radians", r.delta},
                           {"E_model", r.e_model},
                           {"E_quantum", r.e_quantum},
                           {"abs_difference", std::abs(r.e_model - r.e_quantum)},
                           {"joint_model", r.joint_model},
                           {"joint_quantum", r.joint_quantum}});
    emit(cfg, dump(j), out);
  }
  return 0;
}

inline int cmd_chsh(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const OutputFormat fmt = parse_format(cfg.format);
  const ChshSpec spec = parse_spec(cfg.spec);
  const TwoQubitState psi = parse_state(cfg.state);
  std::vector<ChshRow> rows;
  if (!cfg.model.empty()) {
    const ResolvedModel rm = resolve_model(cfg.model);
    rows.push_back({rm.model.name, spec, chsh_model(rm.model, psi, spec)});
  }
  rows.push_back({"quantum", spec, chsh_quantum(psi, spec)});

  if (fmt == OutputFormat::csv) {
    emit(cfg, chsh_csv(rows), out);
  } else {
    nlohmann::json j;
    j["seed"] = cfg.seed;
    j["rows"] = nlohmann::json::array();
    for (const auto& r : rows)
      j["rows"].push_back({{"model", r.model},
                           {"a", to_json(r.spec.a)},
                           {"a_prime", to_json(r.spec.a_prime)},
                           {"b", to_json(r.spec.b)},
                           {"b_prime", to_json(r.spec.b_prime)},
                           {"S", r.s}});
    emit(cfg, dump(j), out);
  }
  return 0;
}

inline int cmd_fine(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const ResolvedModel rm = resolve_model(cfg.model);
  const OutputFormat fmt = parse_format(cfg.format);
  const ChshSpec spec = parse_spec(cfg.spec);
  const TwoQubitState psi = parse_state(cfg.state);

  FineJoint fj;
  try {
    fj = fine_joint_from_model(rm.model, psi, spec);
  } catch (const IneligibleModel& e) {
    err << "model '" << rm.model.name << "' is ineligible: " << e.what() << "\n";
    return 1;
  }
  const double tolerance = cfg.tolerance.value_or(tol::trig);
  const std::vector<MarginalCheckReport> checks{
      fine_marginal_check(fj, model_pairwise_targets(rm.model, psi, spec), tolerance),
      fine_marginal_check(fj, quantum_pairwise_targets(psi, spec), tolerance)};

  if (fmt == OutputFormat::csv) {
    if (cfg.output_path.empty()) {
      out << fine_joint_csv(fj) << "\n" << marginal_check_csv(checks);
    } else {
      write_file_atomically(cfg.output_path, fine_joint_csv(fj));
      write_file_atomically(cfg.output_path + ".marginals.csv", marginal_check_csv(checks));
      out << marginal_check_csv(checks);
    }
  } else {
    nlohmann::json j;
    j["model_name"] = rm.model.name;
    j["seed"] = cfg.seed;
    j["joint"] = to_json(fj);
    j["total"] = fj.total();
    j["marginal_checks"] = nlohmann::json::array();
    for (const auto& c : checks) j["marginal_checks"].push_back(to_json(c));
    emit(cfg, dump(j), out);
  }
  return checks.front().verdict == Verdict::holds ? 0 : 1;
}

inline int cmd_quantum(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const OutputFormat fmt = parse_format(cfg.format);
  const SettingsGrid grid = SettingsGrid::planar(parse_grid_step(cfg.grid_step));
  const TwoQubitState psi = parse_state(cfg.state);
  if (fmt == OutputFormat::csv) {
    std::string body = "phi1,phi2,p_pp,p_pm,p_mp,p_mm,E\n";
    for (const auto& s1 : grid.alice)
      for (const auto& s2 : grid.bob) {
        const auto t = born_table(psi, s1, s2);
        body += format_double(s1.plane_angle()) + "," + format_double(s2.plane_angle());
        for (double p : t) body += "," + format_double(p);
        body += "," + format_double(correlation_of(t)) + "\n";
      }
    emit(cfg, body, out);
  } else {
    nlohmann::json j;
    j["state"] = cfg.state;
    j["grid_spec"] = grid.description;
    j["rows"] = nlohmann::json::array();
    for (const auto& s1 : grid.alice)
      for (const auto& s2 : grid.bob) {
        const auto t = born_table(psi, s1, s2);
        j["rows"].push_back({{"phi1", s1.plane_angle()}, {"phi2", s2.plane_angle()}, {"joint", t}, {"E", correlation_of(t)}});
      }
    emit(cfg, dump(j), out);
  }
  return 0;
}

// ---------------------------------------------------------------------------

inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Audit hidden-variable models of the singlet experiment against Bell's locality conditions"};
  app.require_subcommand(1);
  RunConfig cfg;

  const auto common = [&cfg](CLI::App* sub, bool needs_model) {
    auto* m = sub->add_option("--model", cfg.model, "built-in model name or path to a model definition file");
    if (needs_model) m->required();
    sub->add_option("--grid-step", cfg.grid_step, "settings grid step in radians, e.g. '1/18 pi'");
    sub->add_option("--tolerance", cfg.tolerance, "override the base tolerance");
    sub->add_option("--seed", cfg.seed, "seed recorded in reports");
    sub->add_option("--out", cfg.output_path, "output file (written atomically); stdout if omitted");
    sub->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--state", cfg.state, "singlet, product-up-down or product-up-up");
  };

  auto* audit = app.add_subcommand("audit", "run every locality check on a model");
  common(audit, false);
  std::string positional_model;
  audit->add_option("MODEL", positional_model, "model (alternative to --model)");
  auto* correlate = app.add_subcommand("correlate", "E(delta) for model and oracle");
  common(correlate, true);
  auto* chsh = app.add_subcommand("chsh", "CHSH value for model and oracle");
  common(chsh, false);
  chsh->add_option("--spec", cfg.spec, "a,a',b,b' in radians (default 0,1/2pi,1/4pi,3/4pi)");
  auto* fine = app.add_subcommand("fine", "joint distribution over four observables and its marginal check");
  common(fine, true);
  fine->add_option("--spec", cfg.spec, "a,a',b,b' in radians (default 0,1/2pi,1/4pi,3/4pi)");
  auto* quantum = app.add_subcommand("quantum", "dump Born-rule joint tables over the grid");
  common(quantum, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (audit->parsed()) {
      if (cfg.model.empty()) cfg.model = positional_model;
      if (cfg.model.empty()) throw ParseError("audit needs a model");
      return cmd_audit(cfg, out, err);
    }
    if (correlate->parsed()) return cmd_correlate(cfg, out, err);
    if (chsh->parsed()) return cmd_chsh(cfg, out, err);
    if (fine->parsed()) return cmd_fine(cfg, out, err);
    if (quantum->parsed()) return cmd_quantum(cfg, out, err);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const MalformedModel& e) {
    err << "malformed model: " << e.what() << "\n";
    return 2;
  } catch (const InvalidArgument& e) {
    err << "invalid argument: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace bellaudit::cli
