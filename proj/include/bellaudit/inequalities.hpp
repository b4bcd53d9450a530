#pragma once

// CHSH expressions for models and the Born oracle, and joint distributions
// P(A1, A2, B1, B2) = sum_w P(A1|w) P(A2|w) P(B1|w) P(B2|w) rho(w) for
// factorizable, setting-independent models.

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "bellaudit/audit.hpp"
#include "bellaudit/models.hpp"
#include "bellaudit/quantum.hpp"

namespace bellaudit {

/// Alice measures along a or a', Bob along b or b'.
struct ChshSpec {
  Setting a = Setting::z();
  Setting a_prime = Setting::z();
  Setting b = Setting::z();
  Setting b_prime = Setting::z();

  static ChshSpec planar(double a, double a_prime, double b, double b_prime) {
    return {Setting::from_angle(a), Setting::from_angle(a_prime), Setting::from_angle(b),
            Setting::from_angle(b_prime)};
  }

  /// (0, pi/2, pi/4, 3pi/4): |S| = 2 sqrt 2 on the singlet.
  static ChshSpec optimal() { return planar(0.0, kPi / 2.0, kPi / 4.0, 3.0 * kPi / 4.0); }
};

/// Local bound on |S| for factorizable setting-independent models.
inline constexpr double kChshLocalBound = 2.0;
inline constexpr double kTsirelsonBound = 2.0 * std::numbers::sqrt2;

/// S = E(a,b) - E(a,b') + E(a',b) + E(a',b').
inline double chsh_from_correlations(double e_ab, double e_abp, double e_apb, double e_apbp) {
  return e_ab - e_abp + e_apb + e_apbp;
}

inline double chsh_model(const BeableModel& model, const TwoQubitState& psi, const ChshSpec& spec) {
  return chsh_from_correlations(model_correlation(model, spec.a, spec.b, psi),
                                model_correlation(model, spec.a, spec.b_prime, psi),
                                model_correlation(model, spec.a_prime, spec.b, psi),
                                model_correlation(model, spec.a_prime, spec.b_prime, psi));
}

inline double chsh_quantum(const TwoQubitState& psi, const ChshSpec& spec) {
  return chsh_from_correlations(correlation(psi, spec.a, spec.b), correlation(psi, spec.a, spec.b_prime),
                                correlation(psi, spec.a_prime, spec.b), correlation(psi, spec.a_prime, spec.b_prime));
}

// ---------------------------------------------------------------------------
// Joint distributions over all four observables

/// 2x2 table in (++, +-, -+, --) order.
using PairTable = std::array<double, 4>;

struct FineJoint {
  /// Indexed by 8*[A1=-1] + 4*[A2=-1] + 2*[B1=-1] + [B2=-1].
  std::array<double, 16> table{};
  ChshSpec settings;

  static std::size_t index(Outcome a1, Outcome a2, Outcome b1, Outcome b2) {
    return static_cast<std::size_t>(8 * a1.index() + 4 * a2.index() + 2 * b1.index() + b2.index());
  }

  double at(Outcome a1, Outcome a2, Outcome b1, Outcome b2) const { return table[index(a1, a2, b1, b2)]; }

  double total() const {
    double s = 0.0;
    for (double p : table) s += p;
    return s;
  }

  /// Marginal over (A_i, B_j), i, j in {0, 1} (0 = unprimed).
  PairTable cross_marginal(int i, int j) const {
    PairTable t{};
    for (std::size_t k = 0; k < 16; ++k) {
      const std::size_t ai = i == 0 ? (k >> 3) & 1 : (k >> 2) & 1;
      const std::size_t bj = j == 0 ? (k >> 1) & 1 : k & 1;
      t[2 * ai + bj] += table[k];
    }
    return t;
  }

  /// Marginal over Alice's two observables (A1, A2).
  PairTable alice_marginal() const {
    PairTable t{};
    for (std::size_t k = 0; k < 16; ++k) t[(k >> 2) & 3] += table[k];
    return t;
  }

  double chsh() const {
    return chsh_from_correlations(correlation_of(cross_marginal(0, 0)), correlation_of(cross_marginal(0, 1)),
                                  correlation_of(cross_marginal(1, 0)), correlation_of(cross_marginal(1, 1)));
  }
};

/// One beable's local response probabilities P(+1) for A1, A2, B1, B2.
struct LocalResponses {
  double a1 = 0.5;
  double a2 = 0.5;
  double b1 = 0.5;
  double b2 = 0.5;
};

/// sum_w weight_w * product of the four local responses.
inline std::array<double, 16> fine_table_from_responses(const std::vector<double>& weights,
                                                        const std::vector<LocalResponses>& responses) {
  std::array<double, 16> t{};
  const auto p = [](double plus, Outcome o) { return o == Outcome::plus() ? plus : 1.0 - plus; };
  for (std::size_t w = 0; w < weights.size(); ++w)
    for (auto a1 : outcomes())
      for (auto a2 : outcomes())
        for (auto b1 : outcomes())
          for (auto b2 : outcomes())
            t[FineJoint::index(a1, a2, b1, b2)] += weights[w] * p(responses[w].a1, a1) * p(responses[w].a2, a2) *
                                                   p(responses[w].b1, b1) * p(responses[w].b2, b2);
  return t;
}

/// The model must be factorized and its density must not depend on the
/// settings (checked over the four CHSH setting pairs and the default grid).
/// Throws IneligibleModel with the reason otherwise.
inline FineJoint fine_joint_from_model(const BeableModel& model, const TwoQubitState& psi, const ChshSpec& spec) {
  if (!model.factorized()) throw IneligibleModel("kernel is not factorized");
  const SettingsGrid spec_grid = SettingsGrid::explicit_pairs({spec.a, spec.a_prime}, {spec.b, spec.b_prime},
                                                              "CHSH settings {a, a'} x {b, b'}");
  if (check_measurement_independence(model, psi, spec_grid).verdict != Verdict::holds ||
      check_measurement_independence(model, psi, SettingsGrid::default_planar()).verdict != Verdict::holds)
    throw IneligibleModel("measurement independence violated");

  const BeableDensity d = checked_density(model, spec.a, spec.b, psi);
  FineJoint fj;
  fj.settings = spec;
  for (const auto& w : d.atoms)
    for (auto a1 : outcomes())
      for (auto a2 : outcomes())
        for (auto b1 : outcomes())
          for (auto b2 : outcomes())
            fj.table[FineJoint::index(a1, a2, b1, b2)] += w.weight * model.alice(w, spec.a, psi, a1) *
                                                          model.alice(w, spec.a_prime, psi, a2) *
                                                          model.bob(w, spec.b, psi, b1) *
                                                          model.bob(w, spec.b_prime, psi, b2);
  return fj;
}

/// Pairwise statistics a joint table is compared against. `cross` is ordered
/// (A1,B1), (A1,B2), (A2,B1), (A2,B2).
struct PairwiseTargets {
  std::string label;
  std::array<std::optional<PairTable>, 4> cross;
  std::optional<PairTable> alice_pair;
};

inline PairwiseTargets model_pairwise_targets(const BeableModel& model, const TwoQubitState& psi,
                                              const ChshSpec& spec) {
  PairwiseTargets t;
  t.label = model.name;
  t.cross = {model_joint_table(model, spec.a, spec.b, psi), model_joint_table(model, spec.a, spec.b_prime, psi),
             model_joint_table(model, spec.a_prime, spec.b, psi),
             model_joint_table(model, spec.a_prime, spec.b_prime, psi)};
  if (model.factorized()) {
    PairTable aa{};
    const BeableDensity d = checked_density(model, spec.a, spec.b, psi);
    for (const auto& w : d.atoms)
      for (auto a1 : outcomes())
        for (auto a2 : outcomes())
          aa[pair_index(a1, a2)] += w.weight * model.alice(w, spec.a, psi, a1) * model.alice(w, spec.a_prime, psi, a2);
    t.alice_pair = aa;
  }
  return t;
}

/// Born statistics for the four cross pairs. Alice's two observables have no
/// joint quantum statistics, so no same-party target is set.
inline PairwiseTargets quantum_pairwise_targets(const TwoQubitState& psi, const ChshSpec& spec) {
  PairwiseTargets t;
  t.label = "quantum";
  t.cross = {born_table(psi, spec.a, spec.b), born_table(psi, spec.a, spec.b_prime), born_table(psi, spec.a_prime, spec.b),
             born_table(psi, spec.a_prime, spec.b_prime)};
  return t;
}

struct PairDeviation {
  std::string pair;
  /// Total-variation distance, half the L1 distance between the 2x2 tables.
  double total_variation = 0.0;
  double max_entry = 0.0;
};

struct MarginalCheckReport {
  std::string target_label;
  std::vector<PairDeviation> pairs;
  double max_total_variation = 0.0;
  double max_entry_deviation = 0.0;
  std::string worst_pair;
  double tolerance = tol::trig;
  Verdict verdict = Verdict::holds;
  double joint_chsh = 0.0;
  std::optional<double> target_chsh;
  /// Set when the target's |S| exceeds the local bound: no joint table of
  /// this form can have these pairwise marginals.
  bool impossibility_witness = false;
  std::string witness;
};

/// Compares the joint table's pairwise marginals against `target`. The
/// deviation per pair is the total-variation distance.
inline MarginalCheckReport fine_marginal_check(const FineJoint& fj, const PairwiseTargets& target,
                                               double tolerance = tol::trig) {
  MarginalCheckReport r;
  r.target_label = target.label;
  r.tolerance = tolerance;
  r.joint_chsh = fj.chsh();

  const auto compare = [&](const std::string& name, const PairTable& got, const PairTable& want) {
    PairDeviation d;
    d.pair = name;
    double l1 = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
      const double e = std::abs(got[k] - want[k]);
      l1 += e;
      d.max_entry = std::max(d.max_entry, e);
    }
    d.total_variation = 0.5 * l1;
    if (r.pairs.empty() || d.total_variation > r.max_total_variation) r.worst_pair = name;
    r.max_total_variation = std::max(r.max_total_variation, d.total_variation);
    r.max_entry_deviation = std::max(r.max_entry_deviation, d.max_entry);
    r.pairs.push_back(d);
  };

  static const std::array<const char*, 4> names{"A1B1", "A1B2", "A2B1", "A2B2"};
  for (std::size_t k = 0; k < 4; ++k)
    if (target.cross[k]) compare(names[k], fj.cross_marginal(static_cast<int>(k / 2), static_cast<int>(k % 2)), *target.cross[k]);
  if (target.alice_pair) compare("A1A2", fj.alice_marginal(), *target.alice_pair);

  r.verdict = r.max_total_variation <= tolerance ? Verdict::holds : Verdict::violated;

  bool all_cross = true;
  for (const auto& c : target.cross) all_cross = all_cross && c.has_value();
  if (all_cross) {
    const double s = chsh_from_correlations(correlation_of(*target.cross[0]), correlation_of(*target.cross[1]),
                                            correlation_of(*target.cross[2]), correlation_of(*target.cross[3]));
    r.target_chsh = s;
    if (std::abs(s) > kChshLocalBound + tol::trig) {
      r.impossibility_witness = true;
      char buf[256];
      std::snprintf(buf, sizeof buf,
                    "target |S| = %.12f exceeds 2; every table of this form has |S| <= 2, so some pair differs "
                    "by total variation >= %.12f",
                    std::abs(s), (std::abs(s) - kChshLocalBound) / 8.0);
      r.witness = buf;
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Local-bound property over random tables

struct ChshBoundReport {
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  double max_abs_s = 0.0;
  std::size_t violations = 0;
  double bound = kChshLocalBound + tol::trig;
  double max_normalization_error = 0.0;
};

/// Draws `samples` random tables (1-4 beables, random weights, responses
/// uniform in [0,1] or deterministic with equal odds) and records the largest
/// |S| computed from their marginals.
inline ChshBoundReport chsh_bound_property(std::size_t samples, std::uint64_t seed) {
  ChshBoundReport r;
  r.samples = samples;
  r.seed = seed;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> atoms(1, 4);
  std::bernoulli_distribution coin(0.5);
  const auto response = [&] { return coin(rng) ? unit(rng) : (coin(rng) ? 1.0 : 0.0); };

  for (std::size_t s = 0; s < samples; ++s) {
    const int n = atoms(rng);
    std::vector<double> weights(static_cast<std::size_t>(n));
    double total = 0.0;
    for (auto& w : weights) total += (w = unit(rng) + 1e-3);
    for (auto& w : weights) w /= total;
    std::vector<LocalResponses> responses(static_cast<std::size_t>(n));
    for (auto& lr : responses) lr = {response(), response(), response(), response()};

    FineJoint fj;
    fj.table = fine_table_from_responses(weights, responses);
    r.max_normalization_error = std::max(r.max_normalization_error, std::abs(fj.total() - 1.0));
    const double abs_s = std::abs(fj.chsh());
    r.max_abs_s = std::max(r.max_abs_s, abs_s);
    if (abs_s > r.bound) ++r.violations;
  }
  return r;
}

/// Largest |S| over the 16 deterministic assignments of (A1, A2, B1, B2).
inline double deterministic_chsh_maximum() {
  double best = 0.0;
  for (int a1 : {1, -1})
    for (int a2 : {1, -1})
      for (int b1 : {1, -1})
        for (int b2 : {1, -1})
          best = std::max(best, std::abs(static_cast<double>(chsh_from_correlations(a1 * b1, a1 * b2, a2 * b1, a2 * b2))));
  return best;
}

}  // namespace bellaudit
