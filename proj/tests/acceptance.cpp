// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "bellaudit/audit.hpp"
#include "bellaudit/inequalities.hpp"
#include "bellaudit/models.hpp"
#include "bellaudit/quantum.hpp"
#include "cli.hpp"
#include "property_runs.hpp"

using namespace bellaudit;
namespace c = bellaudit::condition;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Line {
  int number;
  std::string title;
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

Line anticorrelation() {
  const auto t0 = Clock::now();
  const auto psi = singlet();
  double worst = 0.0;
  for (const auto& s : SettingsGrid::default_planar().alice)
    for (auto a : outcomes())
      for (auto b : outcomes()) {
        const double want = a == b ? 0.0 : 0.5;
        worst = std::max(worst, std::abs(born_joint(psi, s, s, a, b) - want));
      }
  const double t = seconds_since(t0);
  return {1, "equal-settings anticorrelation over 36 planar angles", worst <= 1e-12 && t < 1.0,
          "max deviation " + fmt("%.3g", worst) + ", " + fmt("%.3f", t) + " s"};
}

Line operator_identities() {
  const auto r = check_anticorrelation_operator(singlet());
  return {2, "(sigma_k (x) I + I (x) sigma_k) singlet = 0 for k = x, y, z", r.max() <= 1e-12,
          "residuals x " + fmt("%.3g", r.x) + ", y " + fmt("%.3g", r.y) + ", z " + fmt("%.3g", r.z)};
}

Line model_reproduction() {
  const auto t0 = Clock::now();
  const auto psi = singlet();
  const auto grid = SettingsGrid::default_planar();
  double scully = 0.0, adl = 0.0;
  const auto sm = builtin_scully();
  const auto am = builtin_argaman_dilorenzo();
  for (const auto& s1 : grid.alice)
    for (const auto& s2 : grid.bob) {
      const auto q = born_table(psi, s1, s2);
      const auto ts = model_joint_table(sm, s1, s2, psi);
      const auto ta = model_joint_table(am, s1, s2, psi);
      for (std::size_t k = 0; k < 4; ++k) {
        scully = std::max(scully, std::abs(ts[k] - q[k]));
        adl = std::max(adl, std::abs(ta[k] - q[k]));
      }
    }
  const auto quoted = check_quoted_closed_form(sm, psi, grid);
  const bool flagged = quoted.verdict == Verdict::violated && quoted.diagnostic.find("sign") != std::string::npos;
  const double t = seconds_since(t0);
  return {3, "angular models reproduce the Born joint on 36x36; quoted sign flagged",
          scully <= 1e-12 && adl <= 1e-12 && flagged && t < 5.0,
          "scully " + fmt("%.3g", scully) + ", argaman-dilorenzo " + fmt("%.3g", adl) + ", quoted form " +
              to_string(quoted.verdict) + " (gap " + fmt("%.3g", quoted.max_deviation) + "), " + fmt("%.3f", t) + " s"};
}

Line audit_matrix() {
  struct Row {
    const char* model;
    std::vector<std::pair<const char*, Verdict>> cells;
  };
  const std::vector<Row> rows{
      {"beltrametti-bugajski",
       {{c::outcome_independence, Verdict::violated},
        {c::parameter_independence, Verdict::violated},
        {c::measurement_independence, Verdict::holds}}},
      {"scully",
       {{c::outcome_independence, Verdict::holds},
        {c::parameter_independence, Verdict::holds},
        {c::measurement_independence, Verdict::violated}}},
      {"argaman-dilorenzo",
       {{c::outcome_independence, Verdict::holds},
        {c::parameter_independence, Verdict::holds},
        {c::measurement_independence, Verdict::violated}}},
      {"sawtooth",
       {{c::outcome_independence, Verdict::holds},
        {c::parameter_independence, Verdict::holds},
        {c::measurement_independence, Verdict::holds},
        {c::oracle_agreement, Verdict::violated}}},
  };
  bool pass = true;
  std::string detail;
  for (const auto& row : rows) {
    const auto reports = full_audit(*builtin_model(row.model), singlet(), SettingsGrid::default_planar());
    for (const auto& [cond, want] : row.cells) {
      const AuditReport* r = find_report(reports, cond);
      if (r && r->verdict == want) continue;
      pass = false;
      detail += std::string(detail.empty() ? "" : "; ") + row.model + " " + cond + " expected " + to_string(want) +
                ", got " + (r ? to_string(r->verdict) : "missing") +
                (r ? " (max deviation " + fmt("%.3g", r->max_deviation) + ")" : "");
    }
  }
  if (pass) detail = "all 13 cells match";
  return {4, "audit matrix for the four reference models", pass, detail};
}

Line epr_determinism() {
  const auto r = props::run_epr_property(2024, 100);
  return {5, "EPR: local anticorrelated random models are deterministic on support",
          r.qualifying >= 100 && r.deterministic == r.qualifying,
          std::to_string(r.deterministic) + "/" + std::to_string(r.qualifying) + " qualifying models deterministic (" +
              std::to_string(r.generated) + " generated, seed 2024), worst " + fmt("%.3g", r.worst_determinism)};
}

Line chsh() {
  const auto t0 = Clock::now();
  const double s_opt = std::abs(chsh_quantum(singlet(), ChshSpec::optimal()));
  const auto ts = props::run_tsirelson_property(5, 100000);
  const auto local = props::run_local_chsh_property(77, 100, 10000);
  const auto fine = chsh_bound_property(10000, 99);
  const double t = seconds_since(t0);
  const bool pass = std::abs(s_opt - kTsirelsonBound) <= 1e-9 && ts.violations == 0 && local.not_local == 0 &&
                    local.violations == 0 && local.samples >= 10000 && fine.violations == 0 && t < 30.0;
  return {6, "CHSH: quantum 2 sqrt 2, Tsirelson over 1e5 specs, local bound for models and tables", pass,
          "|S_opt| " + fmt("%.12f", s_opt) + ", max quantum " + fmt("%.12f", ts.max_abs_s) + ", max local model " +
              fmt("%.12f", local.max_abs_s) + " over " + std::to_string(local.samples) + " samples, max table " +
              fmt("%.12f", fine.max_abs_s) + ", " + fmt("%.2f", t) + " s"};
}

Line fine_construction() {
  const auto saw = builtin_sawtooth_local();
  const auto spec = ChshSpec::optimal();
  const auto fj = fine_joint_from_model(saw, singlet(), spec);
  const auto own = fine_marginal_check(fj, model_pairwise_targets(saw, singlet(), spec));
  const auto quantum = fine_marginal_check(fj, quantum_pairwise_targets(singlet(), spec));
  const double norm = std::abs(fj.total() - 1.0);
  const bool pass = norm <= 1e-12 && own.max_total_variation <= 1e-9 && quantum.impossibility_witness &&
                    quantum.max_total_variation > 0.07;
  return {7, "joint distribution for the sawtooth model and quantum-target impossibility", pass,
          "normalization error " + fmt("%.3g", norm) + ", own marginals " + fmt("%.3g", own.max_total_variation) +
              ", quantum target " + fmt("%.6f", quantum.max_total_variation) + " at " + quantum.worst_pair +
              (quantum.impossibility_witness ? " (witness emitted)" : " (no witness)")};
}

Line nonsignaling() {
  const double grid_dev = props::run_nonsignaling_grid(singlet(), SettingsGrid::default_planar());
  const auto kicks = props::run_kick_property(13, 100);
  const bool pass = grid_dev <= 1e-12 && kicks.max_expectation_change <= 1e-12 && kicks.max_commutator <= 1e-12;
  return {8, "nonsignaling on the 36^3 grid and under 100 commuting local kicks", pass,
          "marginal deviation " + fmt("%.3g", grid_dev) + ", expectation change " +
              fmt("%.3g", kicks.max_expectation_change) + ", commutator " + fmt("%.3g", kicks.max_commutator)};
}

Line factorization() {
  const auto r = check_state_factorization(singlet(), SettingsGrid::default_planar());
  std::string detail = "max deviation " + fmt("%.6f", r.max_deviation);
  if (!r.witnesses.empty()) {
    const auto& w = r.witnesses.front();
    detail += ", witness phi1 " + fmt("%.6f", w.s1.plane_angle()) + " phi2 " + fmt("%.6f", w.s2.plane_angle()) +
              " a " + std::to_string(*w.a) + " b " + std::to_string(*w.b) + ": P(a,b) " + fmt("%.6f", w.lhs) +
              " vs P(a)P(b) " + fmt("%.6f", w.rhs);
  }
  return {9, "singlet statistics do not factorize", r.max_deviation >= 0.25 - 1e-12 && !r.witnesses.empty(), detail};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Line reproducibility() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "bellaudit_acceptance";
  fs::create_directories(dir);
  const std::vector<std::vector<std::string>> commands{
      {"audit", "scully", "--format", "json"},
      {"audit", "sawtooth", "--format", "csv"},
      {"correlate", "--model", "argaman-dilorenzo", "--format", "json"},
      {"chsh", "--model", "sawtooth", "--spec", "0,1/2 pi,1/4 pi,3/4 pi"},
      {"fine", "--model", "sawtooth", "--format", "json"},
      {"quantum", "--format", "csv"},
  };
  bool pass = true;
  std::size_t compared = 0;
  for (std::size_t i = 0; i < commands.size(); ++i) {
    std::string contents[2];
    for (int rep = 0; rep < 2; ++rep) {
      const fs::path out = dir / ("run" + std::to_string(i) + "_" + std::to_string(rep));
      std::vector<std::string> args{"bellaudit"};
      args.insert(args.end(), commands[i].begin(), commands[i].end());
      args.insert(args.end(), {"--seed", "31", "--out", out.string()});
      std::vector<const char*> argv;
      for (const auto& a : args) argv.push_back(a.c_str());
      std::ostringstream sink_out, sink_err;
      cli::run_cli(static_cast<int>(argv.size()), argv.data(), sink_out, sink_err);
      contents[rep] = slurp(out);
    }
    ++compared;
    pass = pass && !contents[0].empty() && contents[0] == contents[1];
  }
  return {10, "identical CLI invocations give byte-identical reports", pass,
          std::to_string(compared) + " command pairs compared"};
}

}  // namespace

int main() {
  const std::vector<Line (*)()> criteria{anticorrelation, operator_identities, model_reproduction, audit_matrix,
                                         epr_determinism, chsh,                 fine_construction,  nonsignaling,
                                         factorization,   reproducibility};
  int failures = 0;
  for (auto* criterion : criteria) {
    Line l;
    try {
      l = criterion();
    } catch (const std::exception& e) {
      l = {0, "criterion threw", false, e.what()};
    }
    if (!l.pass) ++failures;
    std::printf("[%s] %2d. %s: %s\n", l.pass ? "PASS" : "FAIL", l.number, l.title.c_str(), l.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
