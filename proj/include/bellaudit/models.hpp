#pragma once

// Beable models: a setting-dependent delta-mixture density over beables
// omega = (theta1, theta2, lambda, state) together with an outcome kernel
// P(a, b | omega, n1, n2, psi). Model predictions integrate the kernel
// against the density.

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bellaudit/errors.hpp"
#include "bellaudit/quantum.hpp"

namespace bellaudit {

struct BeableAtom {
  double weight = 0.0;
  double theta1 = 0.0;
  double theta2 = 0.0;
  std::optional<double> lambda;
  std::optional<TwoQubitState> state;
};

/// `grid` densities are uniform quadratures over lambda; their cells are
/// stored as atoms of equal weight so integration is the same loop.
enum class DensityKind { atoms, grid };

struct BeableDensity {
  DensityKind kind = DensityKind::atoms;
  std::vector<BeableAtom> atoms;

  double total_mass() const {
    double m = 0.0;
    for (const auto& a : atoms) m += a.weight;
    return m;
  }
};

/// Atom with angles wrapped to [0, 2pi).
inline BeableAtom make_atom(double weight, double theta1, double theta2,
                            std::optional<double> lambda = std::nullopt) {
  return BeableAtom{weight, wrap_angle(theta1), wrap_angle(theta2), lambda, std::nullopt};
}

/// N cells over lambda in [0, 2pi), midpoint rule; theta1 = lambda,
/// theta2 = lambda + pi.
inline BeableDensity uniform_lambda_grid(std::size_t cells) {
  if (cells == 0) throw InvalidArgument("grid needs at least one cell");
  BeableDensity d;
  d.kind = DensityKind::grid;
  d.atoms.reserve(cells);
  const double w = 1.0 / static_cast<double>(cells);
  for (std::size_t k = 0; k < cells; ++k) {
    const double lambda = (static_cast<double>(k) + 0.5) * kTwoPi / static_cast<double>(cells);
    d.atoms.push_back(make_atom(w, lambda, lambda + kPi, lambda));
  }
  return d;
}

enum class KernelForm { factorized, joint };

inline const char* to_string(KernelForm f) { return f == KernelForm::factorized ? "factorized" : "joint"; }

using DensityBuilder = std::function<BeableDensity(const Setting&, const Setting&, const TwoQubitState&)>;
using JointKernel = std::function<double(const BeableAtom&, const Setting&, const Setting&,
                                         const TwoQubitState&, Outcome, Outcome)>;
/// Local response P_i(outcome | omega, n_i, psi).
using LocalKernel = std::function<double(const BeableAtom&, const Setting&, const TwoQubitState&, Outcome)>;
/// Closed-form joint P(a, b | n1, n2, psi) quoted for a model, compared in reports.
using ClosedFormJoint = std::function<double(const Setting&, const Setting&, Outcome, Outcome)>;

struct BeableModel {
  std::string name;
  KernelForm form = KernelForm::joint;
  DensityBuilder density;
  JointKernel joint;   // used when form == joint
  LocalKernel alice;   // used when form == factorized
  LocalKernel bob;     // used when form == factorized
  std::optional<ClosedFormJoint> quoted_closed_form;
  std::string quoted_closed_form_label;

  bool factorized() const { return form == KernelForm::factorized; }

  double kernel(const BeableAtom& w, const Setting& s1, const Setting& s2, const TwoQubitState& psi,
                Outcome a, Outcome b) const {
    if (factorized()) return alice(w, s1, psi, a) * bob(w, s2, psi, b);
    return joint(w, s1, s2, psi, a, b);
  }

  /// P(a | omega, n1, n2): the local response itself for factorized models,
  /// the marginal of the joint kernel otherwise.
  double alice_marginal(const BeableAtom& w, const Setting& s1, const Setting& s2, const TwoQubitState& psi,
                        Outcome a) const {
    if (factorized()) return alice(w, s1, psi, a);
    return joint(w, s1, s2, psi, a, Outcome::plus()) + joint(w, s1, s2, psi, a, Outcome::minus());
  }

  double bob_marginal(const BeableAtom& w, const Setting& s1, const Setting& s2, const TwoQubitState& psi,
                      Outcome b) const {
    if (factorized()) return bob(w, s2, psi, b);
    return joint(w, s1, s2, psi, Outcome::plus(), b) + joint(w, s1, s2, psi, Outcome::minus(), b);
  }
};

/// Builds the density and rejects negative weights or mass != 1.
inline BeableDensity checked_density(const BeableModel& model, const Setting& s1, const Setting& s2,
                                     const TwoQubitState& psi) {
  BeableDensity d = model.density(s1, s2, psi);
  for (const auto& a : d.atoms)
    if (!(a.weight >= 0.0)) throw MalformedModel("model '" + model.name + "': negative atom weight");
  if (std::abs(d.total_mass() - 1.0) > tol::exact)
    throw MalformedModel("model '" + model.name + "': density mass is not 1");
  return d;
}

/// All four model joint probabilities for one settings pair, basis order.
inline std::array<double, 4> model_joint_table(const BeableModel& model, const Setting& s1, const Setting& s2,
                                               const TwoQubitState& psi) {
  const BeableDensity d = checked_density(model, s1, s2, psi);
  std::array<double, 4> t{};
  for (const auto& w : d.atoms)
    for (auto a : outcomes())
      for (auto b : outcomes()) t[pair_index(a, b)] += w.weight * model.kernel(w, s1, s2, psi, a, b);
  return t;
}

inline double model_joint(const BeableModel& model, const Setting& s1, const Setting& s2,
                          const TwoQubitState& psi, Outcome a, Outcome b) {
  return model_joint_table(model, s1, s2, psi)[pair_index(a, b)];
}

inline double model_correlation(const BeableModel& model, const Setting& s1, const Setting& s2,
                                const TwoQubitState& psi) {
  return correlation_of(model_joint_table(model, s1, s2, psi));
}

struct ConditionalMeans {
  double a_bar = 0.0;
  double b_bar = 0.0;
};

/// A-bar = sum_a a P1(a | omega, n1), likewise B-bar.
inline ConditionalMeans conditional_means(const BeableModel& model, const BeableAtom& w, const Setting& s1,
                                          const Setting& s2, const TwoQubitState& psi) {
  return {model.alice_marginal(w, s1, s2, psi, Outcome::plus()) -
              model.alice_marginal(w, s1, s2, psi, Outcome::minus()),
          model.bob_marginal(w, s1, s2, psi, Outcome::plus()) -
              model.bob_marginal(w, s1, s2, psi, Outcome::minus())};
}

// ---------------------------------------------------------------------------
// Kernel presets

namespace kernels {

/// (1 + o cos(phi - theta)) / 2.
inline double cosine_response(Outcome o, double phi, double theta) {
  return 0.5 * (1.0 + o.value() * std::cos(phi - theta));
}

/// 1 if sign(cos(phi - theta)) == o, else 0; sign(0) = +1.
inline double sign_response(Outcome o, double phi, double theta) {
  const int s = std::cos(phi - theta) >= 0.0 ? 1 : -1;
  return s == o.value() ? 1.0 : 0.0;
}

inline LocalKernel cosine_alice() {
  return [](const BeableAtom& w, const Setting& s, const TwoQubitState&, Outcome o) {
    return cosine_response(o, s.plane_angle(), w.theta1);
  };
}
inline LocalKernel cosine_bob() {
  return [](const BeableAtom& w, const Setting& s, const TwoQubitState&, Outcome o) {
    return cosine_response(o, s.plane_angle(), w.theta2);
  };
}
inline LocalKernel sign_alice() {
  return [](const BeableAtom& w, const Setting& s, const TwoQubitState&, Outcome o) {
    return sign_response(o, s.plane_angle(), w.theta1);
  };
}
inline LocalKernel sign_bob() {
  return [](const BeableAtom& w, const Setting& s, const TwoQubitState&, Outcome o) {
    return sign_response(o, s.plane_angle(), w.theta2);
  };
}

/// Born rule on the atom's state label, falling back to the preparation.
inline JointKernel born() {
  return [](const BeableAtom& w, const Setting& s1, const Setting& s2, const TwoQubitState& psi, Outcome a,
            Outcome b) { return born_joint(w.state ? *w.state : psi, s1, s2, a, b); };
}

}  // namespace kernels

// ---------------------------------------------------------------------------
// Built-in models

/// Ontic point mass on the quantum state: one atom of weight 1 labelled psi,
/// Born-rule joint kernel.
inline BeableModel builtin_beltrametti_bugajski() {
  BeableModel m;
  m.name = "beltrametti-bugajski";
  m.form = KernelForm::joint;
  m.density = [](const Setting&, const Setting&, const TwoQubitState& psi) {
    BeableDensity d;
    BeableAtom atom;
    atom.weight = 1.0;
    atom.state = psi;
    d.atoms.push_back(atom);
    return d;
  };
  m.joint = kernels::born();
  return m;
}

/// (1 + a b cos(phi1 - phi2)) / 4, the closed form quoted alongside the
/// angular model. Its sign disagrees with the model's own density and
/// responses, which give (1 - a b cos(phi1 - phi2)) / 4.
inline double quoted_scully_joint(const Setting& s1, const Setting& s2, Outcome a, Outcome b) {
  return 0.25 * (1.0 + a.value() * b.value() * std::cos(s1.plane_angle() - s2.plane_angle()));
}

struct ScullyOptions {
  /// Pair the atoms as theta2 = theta1 instead of theta1 + pi, which turns the
  /// model's joint into the quoted (1 + a b cos) / 4 form.
  bool printed_sign = false;
};

/// Two atoms of weight 1/2 pinned to Alice's setting:
/// (phi1, phi1 + pi) and (phi1 + pi, phi1), cosine responses on each side.
inline BeableModel builtin_scully(ScullyOptions options = {}) {
  BeableModel m;
  m.name = options.printed_sign ? "scully-printed-sign" : "scully";
  m.form = KernelForm::factorized;
  const double partner_offset = options.printed_sign ? 0.0 : kPi;
  m.density = [partner_offset](const Setting& s1, const Setting&, const TwoQubitState&) {
    const double phi1 = s1.plane_angle();
    BeableDensity d;
    d.atoms.push_back(make_atom(0.5, phi1, phi1 + partner_offset));
    d.atoms.push_back(make_atom(0.5, phi1 + kPi, phi1 + kPi + partner_offset));
    return d;
  };
  m.alice = kernels::cosine_alice();
  m.bob = kernels::cosine_bob();
  m.quoted_closed_form = quoted_scully_joint;
  m.quoted_closed_form_label = "(1 + a b cos(phi1 - phi2)) / 4";
  return m;
}

/// Symmetric variant: four atoms of weight 1/4 with theta2 = theta1 + pi and
/// theta1 in {phi1, phi1 + pi, phi2 - pi, phi2}.
inline BeableModel builtin_argaman_dilorenzo() {
  BeableModel m;
  m.name = "argaman-dilorenzo";
  m.form = KernelForm::factorized;
  m.density = [](const Setting& s1, const Setting& s2, const TwoQubitState&) {
    const double phi1 = s1.plane_angle();
    const double phi2 = s2.plane_angle();
    BeableDensity d;
    for (double theta1 : {phi1, phi1 + kPi, phi2 - kPi, phi2}) d.atoms.push_back(make_atom(0.25, theta1, theta1 + kPi));
    return d;
  };
  m.alice = kernels::cosine_alice();
  m.bob = kernels::cosine_bob();
  return m;
}

inline constexpr std::size_t kDefaultGridCells = 720;

/// Local deterministic contrast model: lambda uniform on the circle,
/// A = sign cos(phi1 - lambda), B = -sign cos(phi2 - lambda).
inline BeableModel builtin_sawtooth_local(std::size_t cells = kDefaultGridCells) {
  BeableModel m;
  m.name = "sawtooth";
  m.form = KernelForm::factorized;
  const BeableDensity grid = uniform_lambda_grid(cells);
  m.density = [grid](const Setting&, const Setting&, const TwoQubitState&) { return grid; };
  m.alice = [](const BeableAtom& w, const Setting& s, const TwoQubitState&, Outcome o) {
    return kernels::sign_response(o, s.plane_angle(), w.lambda.value_or(w.theta1));
  };
  m.bob = [](const BeableAtom& w, const Setting& s, const TwoQubitState&, Outcome o) {
    return kernels::sign_response(Outcome(-o.value()), s.plane_angle(), w.lambda.value_or(w.theta1));
  };
  return m;
}

inline std::vector<std::string> builtin_model_names() {
  return {"beltrametti-bugajski", "scully", "scully-printed-sign", "argaman-dilorenzo", "sawtooth"};
}

inline std::optional<BeableModel> builtin_model(const std::string& name) {
  if (name == "beltrametti-bugajski") return builtin_beltrametti_bugajski();
  if (name == "scully") return builtin_scully();
  if (name == "scully-printed-sign") return builtin_scully({.printed_sign = true});
  if (name == "argaman-dilorenzo") return builtin_argaman_dilorenzo();
  if (name == "sawtooth") return builtin_sawtooth_local();
  return std::nullopt;
}

}  // namespace bellaudit
