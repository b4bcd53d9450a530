#pragma once

// Local-causality audits of beable models: outcome independence, parameter
// independence, measurement independence, the EPR support constraints,
// determinism on support, bounded conditional means, and agreement with the
// Born-rule oracle. Every checker sweeps a finite settings grid and returns
// evidence (worst deviations with witnesses), not just a boolean.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bellaudit/models.hpp"
#include "bellaudit/quantum.hpp"

namespace bellaudit {

namespace condition {
inline constexpr const char* outcome_independence = "outcome-independence";
inline constexpr const char* parameter_independence = "parameter-independence";
inline constexpr const char* measurement_independence = "measurement-independence";
inline constexpr const char* epr_support = "epr-support";
inline constexpr const char* determinism = "determinism-on-support";
inline constexpr const char* bounded_means = "bounded-means";
inline constexpr const char* oracle_agreement = "oracle-agreement";
inline constexpr const char* quoted_closed_form = "quoted-closed-form";
inline constexpr const char* state_factorization = "state-factorization";
}  // namespace condition

enum class Verdict { holds, violated, not_applicable };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::violated: return "violated";
    case Verdict::not_applicable: return "not-applicable";
  }
  return "?";
}

inline std::optional<Verdict> parse_verdict(const std::string& s) {
  if (s == "holds") return Verdict::holds;
  if (s == "violated") return Verdict::violated;
  if (s == "not-applicable") return Verdict::not_applicable;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Grids

struct SettingsGrid {
  std::vector<Setting> alice;
  std::vector<Setting> bob;
  std::string description;

  /// Both parties sweep k * step for k = 0 .. n-1, where n * step = 2pi.
  static SettingsGrid planar(double step) {
    if (!(step > 0.0)) throw InvalidArgument("grid step must be positive");
    const double n_real = std::round(kTwoPi / step);
    if (n_real < 1.0 || std::abs(n_real * step - kTwoPi) > tol::exact)
      throw InvalidArgument("grid step must divide 2pi");
    const auto n = static_cast<std::size_t>(n_real);
    SettingsGrid g;
    for (std::size_t k = 0; k < n; ++k) {
      g.alice.push_back(Setting::from_angle(static_cast<double>(k) * step));
    }
    g.bob = g.alice;
    char buf[160];
    std::snprintf(buf, sizeof buf, "planar phi1, phi2 in {k * %.17g rad : k = 0..%zu} (%zu x %zu pairs)", step,
                  n - 1, n, n);
    g.description = buf;
    return g;
  }

  /// Default sweep: pi/18 steps, 36 angles per party.
  static SettingsGrid default_planar() { return planar(kPi / 18.0); }

  /// Explicit lists, e.g. the four CHSH pairs.
  static SettingsGrid explicit_pairs(std::vector<Setting> alice, std::vector<Setting> bob, std::string description) {
    return {std::move(alice), std::move(bob), std::move(description)};
  }
};

// ---------------------------------------------------------------------------
// Reports

struct Witness {
  Setting s1 = Setting::z();
  Setting s2 = Setting::z();
  std::optional<std::size_t> atom_index;
  std::optional<int> a;
  std::optional<int> b;
  double lhs = 0.0;
  double rhs = 0.0;
  double deviation = 0.0;
  std::string note;
};

struct AuditReport {
  std::string condition;
  std::string model_name;
  Verdict verdict = Verdict::not_applicable;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  std::vector<Witness> witnesses;
  std::string grid_spec;
  std::size_t points_checked = 0;
  std::size_t points_skipped = 0;
  /// Named sub-maxima, e.g. per-party deviations.
  std::vector<std::pair<std::string, double>> breakdown;
  std::string diagnostic;
};

struct AuditOptions {
  double tolerance = tol::exact;
  double determinism_tolerance = tol::trig;
  /// Atom equality across settings (weights, angles mod 2pi, payloads).
  double matching_tolerance = tol::trig;
  /// Atoms lighter than this are outside the support.
  double support_threshold = tol::exact;
  std::size_t max_witnesses = 10;
};

namespace detail {

/// Accumulates a maximum deviation and keeps the worst offending witnesses.
class Evidence {
 public:
  Evidence(double tolerance, std::size_t keep) : tolerance_(tolerance), keep_(keep) {}

  void observe(double deviation, const Witness& w) {
    ++checked_;
    if (deviation > max_) max_ = deviation;
    if (!(deviation > tolerance_)) return;
    Witness copy = w;
    copy.deviation = deviation;
    const auto pos = std::find_if(worst_.begin(), worst_.end(),
                                  [&](const Witness& x) { return x.deviation < deviation; });
    worst_.insert(pos, std::move(copy));
    if (worst_.size() > keep_) worst_.pop_back();
  }

  void skip(std::size_t n = 1) { skipped_ += n; }
  double max() const { return max_; }

  AuditReport finish(std::string condition, const std::string& model_name, const std::string& grid_spec) const {
    AuditReport r;
    r.condition = std::move(condition);
    r.model_name = model_name;
    r.max_deviation = max_;
    r.tolerance = tolerance_;
    r.verdict = max_ <= tolerance_ ? Verdict::holds : Verdict::violated;
    r.witnesses = worst_;
    r.grid_spec = grid_spec;
    r.points_checked = checked_;
    r.points_skipped = skipped_;
    return r;
  }

 private:
  double tolerance_;
  std::size_t keep_;
  double max_ = 0.0;
  std::size_t checked_ = 0;
  std::size_t skipped_ = 0;
  std::vector<Witness> worst_;
};

inline Witness witness(const Setting& s1, const Setting& s2, std::optional<std::size_t> atom, std::optional<int> a,
                       std::optional<int> b, double lhs, double rhs, std::string note = {}) {
  Witness w;
  w.s1 = s1;
  w.s2 = s2;
  w.atom_index = atom;
  w.a = a;
  w.b = b;
  w.lhs = lhs;
  w.rhs = rhs;
  w.note = std::move(note);
  return w;
}

inline std::vector<double> atom_key(const BeableAtom& w) {
  std::vector<double> k{w.theta1, w.theta2, w.lambda ? 1.0 : 0.0, w.lambda.value_or(0.0), w.state ? 1.0 : 0.0};
  if (w.state)
    for (const auto& z : w.state->amplitudes()) {
      k.push_back(z.real());
      k.push_back(z.imag());
    }
  return k;
}

inline double atom_distance(const BeableAtom& x, const BeableAtom& y) {
  double d = std::abs(x.weight - y.weight);
  d = std::max(d, angle_distance(x.theta1, y.theta1));
  d = std::max(d, angle_distance(x.theta2, y.theta2));
  if (x.lambda.has_value() != y.lambda.has_value()) return std::max(d, 1.0);
  if (x.lambda) d = std::max(d, std::abs(*x.lambda - *y.lambda));
  if (x.state.has_value() != y.state.has_value()) return std::max(d, 1.0);
  if (x.state)
    for (std::size_t i = 0; i < 4; ++i)
      d = std::max(d, std::abs(x.state->amplitudes()[i] - y.state->amplitudes()[i]));
  return d;
}

inline std::vector<BeableAtom> support(const BeableDensity& d, double threshold,
                                       std::vector<std::size_t>* slots = nullptr) {
  std::vector<BeableAtom> out;
  for (std::size_t i = 0; i < d.atoms.size(); ++i)
    if (d.atoms[i].weight >= threshold) {
      out.push_back(d.atoms[i]);
      if (slots) slots->push_back(i);
    }
  return out;
}

struct AtomMatch {
  double deviation = 0.0;
  std::size_t worst_reference_slot = 0;
  std::optional<std::size_t> worst_candidate_slot;
};

/// Matches two supports atom by atom: slot by slot first, then nearest
/// neighbour when the slot pairing fails. Unmatched atoms count as deviation 1.
inline AtomMatch match_supports(const std::vector<BeableAtom>& ref, const std::vector<BeableAtom>& cand,
                                double tolerance) {
  AtomMatch by_slot;
  if (ref.size() == cand.size()) {
    for (std::size_t i = 0; i < ref.size(); ++i) {
      const double d = atom_distance(ref[i], cand[i]);
      if (d > by_slot.deviation) by_slot = {d, i, i};
    }
    if (by_slot.deviation <= tolerance) return by_slot;
  }
  AtomMatch nearest;
  std::vector<bool> used(cand.size(), false);
  for (std::size_t i = 0; i < ref.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    std::optional<std::size_t> best_j;
    for (std::size_t j = 0; j < cand.size(); ++j) {
      if (used[j]) continue;
      const double d = atom_distance(ref[i], cand[j]);
      if (d < best) {
        best = d;
        best_j = j;
      }
    }
    if (!best_j) best = 1.0;
    else used[*best_j] = true;
    if (best > nearest.deviation) nearest = {best, i, best_j};
  }
  if (cand.size() > ref.size() && nearest.deviation < 1.0) nearest = {1.0, 0, std::nullopt};
  if (ref.size() == cand.size() && by_slot.deviation < nearest.deviation) return by_slot;
  return nearest;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Checkers

/// P(a, b | w) == P1(a | w) P2(b | w) on the support, which is the
/// conditional form P(a | b, w) == P1(a | w) wherever P2(b | w) > 0.
/// Points with P2(b | w) == 0 are skipped.
inline AuditReport check_outcome_independence(const BeableModel& model, const TwoQubitState& psi,
                                              const SettingsGrid& grid, const AuditOptions& opt = {}) {
  detail::Evidence ev(opt.tolerance, opt.max_witnesses);
  for (const auto& s1 : grid.alice)
    for (const auto& s2 : grid.bob) {
      const BeableDensity d = checked_density(model, s1, s2, psi);
      for (std::size_t i = 0; i < d.atoms.size(); ++i) {
        const BeableAtom& w = d.atoms[i];
        if (w.weight < opt.support_threshold) continue;
        for (auto b : outcomes()) {
          const double pb = model.bob_marginal(w, s1, s2, psi, b);
          if (pb <= 0.0) {
            ev.skip(2);
            continue;
          }
          for (auto a : outcomes()) {
            const double joint = model.kernel(w, s1, s2, psi, a, b);
            const double product = model.alice_marginal(w, s1, s2, psi, a) * pb;
            ev.observe(std::abs(joint - product),
                       detail::witness(s1, s2, i, a.value(), b.value(), joint, product, "P(a,b|w) vs P1(a|w) P2(b|w)"));
          }
        }
      }
    }
  return ev.finish(condition::outcome_independence, model.name, grid.description);
}

/// Each party's marginal at a fixed beable must not move when the remote
/// setting changes. The beable is taken from the density at (n1, n2) and held
/// fixed while the remote setting sweeps the grid.
inline AuditReport check_parameter_independence(const BeableModel& model, const TwoQubitState& psi,
                                                const SettingsGrid& grid, const AuditOptions& opt = {}) {
  detail::Evidence ev(opt.tolerance, opt.max_witnesses);
  double bob_max = 0.0;
  double alice_max = 0.0;

  struct Source {
    BeableAtom atom;
    std::size_t slot;
    std::size_t other;  // index of the setting the atom was drawn with
  };

  // Bob's marginal across variations of n1.
  for (std::size_t j = 0; j < grid.bob.size(); ++j) {
    const Setting& s2 = grid.bob[j];
    std::map<std::vector<double>, Source> unique;
    for (std::size_t i = 0; i < grid.alice.size(); ++i) {
      const BeableDensity d = checked_density(model, grid.alice[i], s2, psi);
      for (std::size_t k = 0; k < d.atoms.size(); ++k)
        if (d.atoms[k].weight >= opt.support_threshold) unique.try_emplace(detail::atom_key(d.atoms[k]), Source{d.atoms[k], k, i});
    }
    for (const auto& [key, src] : unique)
      for (auto b : outcomes()) {
        const double ref = model.bob_marginal(src.atom, grid.alice[src.other], s2, psi, b);
        for (const auto& s1 : grid.alice) {
          const double v = model.bob_marginal(src.atom, s1, s2, psi, b);
          const double dev = std::abs(v - ref);
          bob_max = std::max(bob_max, dev);
          ev.observe(dev, detail::witness(s1, s2, src.slot, std::nullopt, b.value(), v, ref,
                                          "Bob marginal vs value at the atom's own n1"));
        }
      }
  }

  // Alice's marginal across variations of n2.
  for (std::size_t i = 0; i < grid.alice.size(); ++i) {
    const Setting& s1 = grid.alice[i];
    std::map<std::vector<double>, Source> unique;
    for (std::size_t j = 0; j < grid.bob.size(); ++j) {
      const BeableDensity d = checked_density(model, s1, grid.bob[j], psi);
      for (std::size_t k = 0; k < d.atoms.size(); ++k)
        if (d.atoms[k].weight >= opt.support_threshold) unique.try_emplace(detail::atom_key(d.atoms[k]), Source{d.atoms[k], k, j});
    }
    for (const auto& [key, src] : unique)
      for (auto a : outcomes()) {
        const double ref = model.alice_marginal(src.atom, s1, grid.bob[src.other], psi, a);
        for (const auto& s2 : grid.bob) {
          const double v = model.alice_marginal(src.atom, s1, s2, psi, a);
          const double dev = std::abs(v - ref);
          alice_max = std::max(alice_max, dev);
          ev.observe(dev, detail::witness(s1, s2, src.slot, a.value(), std::nullopt, v, ref,
                                          "Alice marginal vs value at the atom's own n2"));
        }
      }
  }

  AuditReport r = ev.finish(condition::parameter_independence, model.name, grid.description);
  r.breakdown = {{"alice", alice_max}, {"bob", bob_max}};
  if (grid.alice.empty() || grid.bob.empty()) {
    r.verdict = Verdict::not_applicable;
    r.diagnostic = "empty settings grid";
  }
  return r;
}

/// The density (weights and beable values, angles modulo 2pi) must be the same
/// multiset for every settings pair. Densities of different kinds (atoms vs
/// grid) are not compared with each other.
inline AuditReport check_measurement_independence(const BeableModel& model, const TwoQubitState& psi,
                                                  const SettingsGrid& grid, const AuditOptions& opt = {}) {
  detail::Evidence ev(opt.matching_tolerance, opt.max_witnesses);
  if (grid.alice.empty() || grid.bob.empty()) {
    AuditReport r = ev.finish(condition::measurement_independence, model.name, grid.description);
    r.verdict = Verdict::not_applicable;
    r.diagnostic = "empty settings grid";
    return r;
  }
  const Setting& r1 = grid.alice.front();
  const Setting& r2 = grid.bob.front();
  const BeableDensity ref_density = checked_density(model, r1, r2, psi);
  std::vector<std::size_t> ref_slots;
  const auto ref = detail::support(ref_density, opt.support_threshold, &ref_slots);
  std::size_t mixed = 0;

  for (const auto& s1 : grid.alice)
    for (const auto& s2 : grid.bob) {
      const BeableDensity d = checked_density(model, s1, s2, psi);
      if (d.kind != ref_density.kind) {
        ev.skip();
        ++mixed;
        continue;
      }
      const auto cand = detail::support(d, opt.support_threshold);
      const detail::AtomMatch m = detail::match_supports(ref, cand, opt.matching_tolerance);
      const BeableAtom& ra = ref.empty() ? BeableAtom{} : ref[m.worst_reference_slot];
      const double cand_theta1 = m.worst_candidate_slot ? cand[*m.worst_candidate_slot].theta1
                                                        : std::numeric_limits<double>::quiet_NaN();
      ev.observe(m.deviation,
                 detail::witness(s1, s2, ref.empty() ? std::optional<std::size_t>{} : ref_slots[m.worst_reference_slot],
                                 std::nullopt, std::nullopt, ra.theta1, cand_theta1,
                                 "theta1 of reference atom vs its best match at these settings"));
    }

  AuditReport r = ev.finish(condition::measurement_independence, model.name, grid.description);
  if (mixed > 0)
    r.diagnostic = std::to_string(mixed) + " settings pairs produced a different density kind and were not compared";
  return r;
}

/// At equal settings n1 = n2 = n, P1(a | w, n) P2(a | w, n) = 0 for every atom
/// in the support. Joint-kernel models are checked through P(a, a | w, n, n).
inline AuditReport check_epr_support_constraints(const BeableModel& model, const TwoQubitState& psi,
                                                 const SettingsGrid& grid, const AuditOptions& opt = {}) {
  detail::Evidence ev(opt.tolerance, opt.max_witnesses);
  for (const auto& s : grid.alice) {
    const BeableDensity d = checked_density(model, s, s, psi);
    for (std::size_t i = 0; i < d.atoms.size(); ++i) {
      const BeableAtom& w = d.atoms[i];
      if (w.weight < opt.support_threshold) continue;
      for (auto a : outcomes()) {
        const double lhs = model.factorized() ? model.alice(w, s, psi, a) * model.bob(w, s, psi, a)
                                              : model.kernel(w, s, s, psi, a, a);
        ev.observe(lhs, detail::witness(s, s, i, a.value(), a.value(), lhs, 0.0, "same-outcome weight at equal settings"));
      }
    }
  }
  AuditReport r = ev.finish(condition::epr_support, model.name, grid.description + "; equal settings only");
  if (!model.factorized()) r.diagnostic = "joint kernel audited via P(a, a | w, n, n)";
  return r;
}

/// Each party's conditional outcome probabilities lie in {0, 1} on the
/// support. Deviation is min(p, 1 - p).
inline AuditReport check_determinism_on_support(const BeableModel& model, const TwoQubitState& psi,
                                                const SettingsGrid& grid, bool equal_settings_only,
                                                const AuditOptions& opt = {}) {
  detail::Evidence ev(opt.determinism_tolerance, opt.max_witnesses);
  double alice_max = 0.0;
  double bob_max = 0.0;
  const auto visit = [&](const Setting& s1, const Setting& s2) {
    const BeableDensity d = checked_density(model, s1, s2, psi);
    for (std::size_t i = 0; i < d.atoms.size(); ++i) {
      const BeableAtom& w = d.atoms[i];
      if (w.weight < opt.support_threshold) continue;
      for (auto o : outcomes()) {
        const double pa = model.alice_marginal(w, s1, s2, psi, o);
        const double da = std::min(std::abs(pa), std::abs(1.0 - pa));
        alice_max = std::max(alice_max, da);
        ev.observe(da, detail::witness(s1, s2, i, o.value(), std::nullopt, pa, pa < 0.5 ? 0.0 : 1.0, "alice"));
        const double pb = model.bob_marginal(w, s1, s2, psi, o);
        const double db = std::min(std::abs(pb), std::abs(1.0 - pb));
        bob_max = std::max(bob_max, db);
        ev.observe(db, detail::witness(s1, s2, i, std::nullopt, o.value(), pb, pb < 0.5 ? 0.0 : 1.0, "bob"));
      }
    }
  };
  if (equal_settings_only) {
    for (const auto& s : grid.alice) visit(s, s);
  } else {
    for (const auto& s1 : grid.alice)
      for (const auto& s2 : grid.bob) visit(s1, s2);
  }
  AuditReport r = ev.finish(condition::determinism, model.name,
                            grid.description + (equal_settings_only ? "; equal settings only" : ""));
  r.breakdown = {{"alice", alice_max}, {"bob", bob_max}};
  return r;
}

/// |A-bar| <= 1 and |B-bar| <= 1 on the support.
inline AuditReport check_bounded_means(const BeableModel& model, const TwoQubitState& psi, const SettingsGrid& grid,
                                       const AuditOptions& opt = {}) {
  detail::Evidence ev(opt.tolerance, opt.max_witnesses);
  for (const auto& s1 : grid.alice)
    for (const auto& s2 : grid.bob) {
      const BeableDensity d = checked_density(model, s1, s2, psi);
      for (std::size_t i = 0; i < d.atoms.size(); ++i) {
        if (d.atoms[i].weight < opt.support_threshold) continue;
        const ConditionalMeans cm = conditional_means(model, d.atoms[i], s1, s2, psi);
        const double dev = std::max({0.0, std::abs(cm.a_bar) - 1.0, std::abs(cm.b_bar) - 1.0});
        ev.observe(dev, detail::witness(s1, s2, i, std::nullopt, std::nullopt, cm.a_bar, cm.b_bar, "A-bar, B-bar"));
      }
    }
  return ev.finish(condition::bounded_means, model.name, grid.description);
}

/// Model joint probabilities vs the Born rule on psi.
inline AuditReport check_oracle_agreement(const BeableModel& model, const TwoQubitState& psi, const SettingsGrid& grid,
                                          const AuditOptions& opt = {}) {
  detail::Evidence ev(opt.tolerance, opt.max_witnesses);
  for (const auto& s1 : grid.alice)
    for (const auto& s2 : grid.bob) {
      const auto m = model_joint_table(model, s1, s2, psi);
      const auto q = born_table(psi, s1, s2);
      for (auto a : outcomes())
        for (auto b : outcomes()) {
          const auto k = pair_index(a, b);
          ev.observe(std::abs(m[k] - q[k]),
                     detail::witness(s1, s2, std::nullopt, a.value(), b.value(), m[k], q[k], "model vs Born"));
        }
    }
  return ev.finish(condition::oracle_agreement, model.name, grid.description);
}

/// Model joint vs the closed form quoted for it (if any).
inline AuditReport check_quoted_closed_form(const BeableModel& model, const TwoQubitState& psi,
                                            const SettingsGrid& grid, const AuditOptions& opt = {}) {
  detail::Evidence ev(opt.tolerance, opt.max_witnesses);
  if (!model.quoted_closed_form) {
    AuditReport r = ev.finish(condition::quoted_closed_form, model.name, grid.description);
    r.verdict = Verdict::not_applicable;
    r.diagnostic = "model carries no quoted closed form";
    return r;
  }
  for (const auto& s1 : grid.alice)
    for (const auto& s2 : grid.bob) {
      const auto m = model_joint_table(model, s1, s2, psi);
      for (auto a : outcomes())
        for (auto b : outcomes()) {
          const double quoted = (*model.quoted_closed_form)(s1, s2, a, b);
          const double v = m[pair_index(a, b)];
          ev.observe(std::abs(v - quoted),
                     detail::witness(s1, s2, std::nullopt, a.value(), b.value(), v, quoted, "model vs quoted form"));
        }
    }
  AuditReport r = ev.finish(condition::quoted_closed_form, model.name, grid.description);
  r.diagnostic = "quoted form " + model.quoted_closed_form_label;
  if (r.verdict == Verdict::violated)
    r.diagnostic += " disagrees with the model's own density and responses (sign of the a b cos term)";
  return r;
}

/// Born joint vs the product of its own marginals.
inline AuditReport check_state_factorization(const TwoQubitState& psi, const SettingsGrid& grid,
                                             const AuditOptions& opt = {}) {
  detail::Evidence ev(opt.tolerance, opt.max_witnesses);
  for (const auto& s1 : grid.alice)
    for (const auto& s2 : grid.bob) {
      const auto t = born_table(psi, s1, s2);
      for (auto a : outcomes())
        for (auto b : outcomes()) {
          const double pa = t[pair_index(a, Outcome::plus())] + t[pair_index(a, Outcome::minus())];
          const double pb = t[pair_index(Outcome::plus(), b)] + t[pair_index(Outcome::minus(), b)];
          const double joint = t[pair_index(a, b)];
          ev.observe(std::abs(joint - pa * pb),
                     detail::witness(s1, s2, std::nullopt, a.value(), b.value(), joint, pa * pb, "P(a,b) vs P(a) P(b)"));
        }
    }
  return ev.finish(condition::state_factorization, "born", grid.description);
}

/// OI, PI, MI, EPR support, determinism (equal settings), bounded means,
/// oracle agreement, and the quoted closed form when the model has one.
inline std::vector<AuditReport> full_audit(const BeableModel& model, const TwoQubitState& psi,
                                           const SettingsGrid& grid, const AuditOptions& opt = {}) {
  std::vector<AuditReport> out;
  out.push_back(check_outcome_independence(model, psi, grid, opt));
  out.push_back(check_parameter_independence(model, psi, grid, opt));
  out.push_back(check_measurement_independence(model, psi, grid, opt));
  out.push_back(check_epr_support_constraints(model, psi, grid, opt));
  out.push_back(check_determinism_on_support(model, psi, grid, /*equal_settings_only=*/true, opt));
  out.push_back(check_bounded_means(model, psi, grid, opt));
  out.push_back(check_oracle_agreement(model, psi, grid, opt));
  if (model.quoted_closed_form) out.push_back(check_quoted_closed_form(model, psi, grid, opt));
  return out;
}

inline const AuditReport* find_report(const std::vector<AuditReport>& reports, const std::string& cond) {
  for (const auto& r : reports)
    if (r.condition == cond) return &r;
  return nullptr;
}

using ExpectedVerdicts = std::map<std::string, Verdict>;

/// Verdicts declared for the built-in models: which locality condition each
/// model gives up, and whether it reproduces the singlet statistics.
inline ExpectedVerdicts expected_verdicts(const std::string& builtin_name) {
  using V = Verdict;
  namespace c = condition;
  if (builtin_name == "beltrametti-bugajski")
    return {{c::outcome_independence, V::violated},
            {c::parameter_independence, V::violated},
            {c::measurement_independence, V::holds},
            {c::oracle_agreement, V::holds}};
  if (builtin_name == "scully" || builtin_name == "argaman-dilorenzo")
    return {{c::outcome_independence, V::holds},
            {c::parameter_independence, V::holds},
            {c::measurement_independence, V::violated},
            {c::oracle_agreement, V::holds}};
  if (builtin_name == "scully-printed-sign")
    return {{c::outcome_independence, V::holds},
            {c::parameter_independence, V::holds},
            {c::measurement_independence, V::violated},
            {c::oracle_agreement, V::violated},
            {c::quoted_closed_form, V::holds}};
  if (builtin_name == "sawtooth")
    return {{c::outcome_independence, V::holds},
            {c::parameter_independence, V::holds},
            {c::measurement_independence, V::holds},
            {c::oracle_agreement, V::violated}};
  return {};
}

struct VerdictMismatch {
  std::string condition;
  Verdict expected;
  std::optional<Verdict> actual;
};

inline std::vector<VerdictMismatch> compare_verdicts(const std::vector<AuditReport>& reports,
                                                     const ExpectedVerdicts& expected) {
  std::vector<VerdictMismatch> out;
  for (const auto& [cond, v] : expected) {
    const AuditReport* r = find_report(reports, cond);
    if (!r) out.push_back({cond, v, std::nullopt});
    else if (r->verdict != v) out.push_back({cond, v, r->verdict});
  }
  return out;
}

}  // namespace bellaudit
