#pragma once

// Exact two-qubit linear algebra and the Born-rule oracle for the
// two-spin singlet experiment.
//
// Basis ordering for every 4-component object is (++, +-, -+, --), i.e. the
// index of outcome pair (a, b) is 2*[a == -1] + [b == -1].

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>

#include "bellaudit/errors.hpp"

namespace bellaudit {

using Complex = std::complex<double>;

namespace tol {
/// Identities that hold in exact arithmetic.
inline constexpr double exact = 1e-12;
/// Identities where trigonometric cancellation accumulates.
inline constexpr double trig = 1e-9;
}  // namespace tol

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Wraps an angle into [0, 2pi).
inline double wrap_angle(double x) {
  double r = std::fmod(x, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

/// Distance between two angles on the circle, in [0, pi].
inline double angle_distance(double x, double y) {
  const double d = wrap_angle(x - y);
  return std::min(d, kTwoPi - d);
}

// ---------------------------------------------------------------------------
// Outcome

class Outcome {
 public:
  explicit Outcome(int value) : value_(value) {
    if (value != 1 && value != -1) throw InvalidArgument("outcome must be +1 or -1");
  }
  static Outcome plus() { return Outcome(1); }
  static Outcome minus() { return Outcome(-1); }

  int value() const { return value_; }
  /// 0 for +1, 1 for -1.
  int index() const { return value_ == 1 ? 0 : 1; }

  friend bool operator==(Outcome, Outcome) = default;

 private:
  int value_;
};

inline constexpr std::array<int, 2> kOutcomeValues{1, -1};

inline std::array<Outcome, 2> outcomes() { return {Outcome::plus(), Outcome::minus()}; }

inline std::size_t pair_index(Outcome a, Outcome b) {
  return static_cast<std::size_t>(2 * a.index() + b.index());
}

// ---------------------------------------------------------------------------
// Setting

/// Analyzer direction. Planar settings carry their angle phi measured from z
/// in the x-z plane, n = (sin phi, 0, cos phi).
class Setting {
 public:
  static Setting from_angle(double phi) {
    const double w = wrap_angle(phi);
    return Setting({std::sin(w), 0.0, std::cos(w)}, w);
  }

  static Setting from_vector(double x, double y, double z) {
    const double norm = std::sqrt(x * x + y * y + z * z);
    if (!std::isfinite(norm) || std::abs(norm - 1.0) > tol::exact)
      throw InvalidArgument("setting vector must have unit norm");
    return Setting({x, y, z}, std::nullopt);
  }

  static Setting z() { return from_angle(0.0); }
  static Setting x() { return from_angle(kPi / 2.0); }
  static Setting y() { return from_vector(0.0, 1.0, 0.0); }

  const std::array<double, 3>& vector() const { return n_; }

  bool is_planar() const { return angle_.has_value() || std::abs(n_[1]) <= tol::exact; }

  /// Angle in the x-z plane; throws for out-of-plane settings.
  double plane_angle() const {
    if (angle_) return *angle_;
    if (std::abs(n_[1]) > tol::exact)
      throw InvalidArgument("setting is not in the x-z plane");
    return wrap_angle(std::atan2(n_[0], n_[2]));
  }

  std::optional<double> declared_angle() const { return angle_; }

  double dot(const Setting& other) const {
    return n_[0] * other.n_[0] + n_[1] * other.n_[1] + n_[2] * other.n_[2];
  }

 private:
  Setting(std::array<double, 3> n, std::optional<double> angle) : n_(n), angle_(angle) {}

  std::array<double, 3> n_;
  std::optional<double> angle_;
};

// ---------------------------------------------------------------------------
// Matrices

/// 2x2 complex matrix, row-major.
struct Matrix2 {
  std::array<Complex, 4> m{};

  Complex& operator()(std::size_t r, std::size_t c) { return m[2 * r + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return m[2 * r + c]; }

  static Matrix2 identity() { return {{1.0, 0.0, 0.0, 1.0}}; }

  friend Matrix2 operator*(const Matrix2& a, const Matrix2& b) {
    Matrix2 out;
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 0; c < 2; ++c) out(r, c) = a(r, 0) * b(0, c) + a(r, 1) * b(1, c);
    return out;
  }
};

/// 4x4 complex matrix, row-major, in the (++, +-, -+, --) basis.
struct ComplexMatrix4 {
  std::array<Complex, 16> m{};

  Complex& operator()(std::size_t r, std::size_t c) { return m[4 * r + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return m[4 * r + c]; }

  static ComplexMatrix4 identity() {
    ComplexMatrix4 out;
    for (std::size_t i = 0; i < 4; ++i) out(i, i) = 1.0;
    return out;
  }

  friend ComplexMatrix4 operator*(const ComplexMatrix4& a, const ComplexMatrix4& b) {
    ComplexMatrix4 out;
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 4; ++c) {
        Complex s = 0.0;
        for (std::size_t k = 0; k < 4; ++k) s += a(r, k) * b(k, c);
        out(r, c) = s;
      }
    return out;
  }

  friend ComplexMatrix4 operator+(const ComplexMatrix4& a, const ComplexMatrix4& b) {
    ComplexMatrix4 out;
    for (std::size_t i = 0; i < 16; ++i) out.m[i] = a.m[i] + b.m[i];
    return out;
  }

  friend ComplexMatrix4 operator-(const ComplexMatrix4& a, const ComplexMatrix4& b) {
    ComplexMatrix4 out;
    for (std::size_t i = 0; i < 16; ++i) out.m[i] = a.m[i] - b.m[i];
    return out;
  }

  friend ComplexMatrix4 operator*(Complex s, const ComplexMatrix4& a) {
    ComplexMatrix4 out;
    for (std::size_t i = 0; i < 16; ++i) out.m[i] = s * a.m[i];
    return out;
  }

  ComplexMatrix4 adjoint() const {
    ComplexMatrix4 out;
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 4; ++c) out(r, c) = std::conj((*this)(c, r));
    return out;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const auto& z : m) s += std::norm(z);
    return std::sqrt(s);
  }

  double max_abs_difference(const ComplexMatrix4& other) const {
    double d = 0.0;
    for (std::size_t i = 0; i < 16; ++i) d = std::max(d, std::abs(m[i] - other.m[i]));
    return d;
  }

  bool is_hermitian(double tolerance = tol::exact) const {
    return max_abs_difference(adjoint()) <= tolerance;
  }

  bool is_unitary(double tolerance = tol::exact) const {
    return (adjoint() * (*this)).max_abs_difference(identity()) <= tolerance;
  }

  /// O * O == I.
  bool is_involution(double tolerance = tol::exact) const {
    return ((*this) * (*this)).max_abs_difference(identity()) <= tolerance;
  }
};

inline ComplexMatrix4 kron(const Matrix2& a, const Matrix2& b) {
  ComplexMatrix4 out;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return out;
}

namespace pauli {
inline Matrix2 x() { return {{0.0, 1.0, 1.0, 0.0}}; }
inline Matrix2 y() { return {{0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0}}; }
inline Matrix2 z() { return {{1.0, 0.0, 0.0, -1.0}}; }
}  // namespace pauli

/// n . sigma for the setting's unit vector.
inline Matrix2 pauli_along(const Setting& s) {
  const auto& n = s.vector();
  return {{Complex(n[2], 0.0), Complex(n[0], -n[1]), Complex(n[0], n[1]), Complex(-n[2], 0.0)}};
}

/// Projector onto the eigenvalue-`a` eigenspace of n . sigma: (I + a n.sigma) / 2.
inline Matrix2 spin_projector(const Setting& s, Outcome a) {
  const Matrix2 p = pauli_along(s);
  Matrix2 out;
  const double sign = a.value();
  for (std::size_t i = 0; i < 4; ++i) out.m[i] = 0.5 * (Matrix2::identity().m[i] + sign * p.m[i]);
  return out;
}

// ---------------------------------------------------------------------------
// States

class TwoQubitState {
 public:
  using Amplitudes = std::array<Complex, 4>;

  /// Throws unless the squared norm is 1 within tol::exact.
  static TwoQubitState from_amplitudes(const Amplitudes& amps) {
    double n = 0.0;
    for (const auto& z : amps) n += std::norm(z);
    if (!std::isfinite(n) || std::abs(n - 1.0) > tol::exact)
      throw InvalidArgument("two-qubit state must have unit norm");
    return TwoQubitState(amps);
  }

  /// |a>|b> for spin eigenstates along z.
  static TwoQubitState product_z(Outcome a, Outcome b) {
    Amplitudes amps{};
    amps[pair_index(a, b)] = 1.0;
    return TwoQubitState(amps);
  }

  const Amplitudes& amplitudes() const { return amps_; }
  const Complex& amplitude(Outcome a, Outcome b) const { return amps_[pair_index(a, b)]; }

  double norm_squared() const {
    double n = 0.0;
    for (const auto& z : amps_) n += std::norm(z);
    return n;
  }

  TwoQubitState with_global_phase(double gamma) const {
    Amplitudes out = amps_;
    const Complex phase = std::polar(1.0, gamma);
    for (auto& z : out) z *= phase;
    return TwoQubitState(out);
  }

  friend bool operator==(const TwoQubitState&, const TwoQubitState&) = default;

 private:
  explicit TwoQubitState(const Amplitudes& amps) : amps_(amps) {}
  Amplitudes amps_;
};

/// (|+-> - |-+>) / sqrt 2.
inline TwoQubitState singlet() {
  const double h = 1.0 / std::numbers::sqrt2;
  return TwoQubitState::from_amplitudes({0.0, h, -h, 0.0});
}

inline TwoQubitState::Amplitudes apply(const ComplexMatrix4& op, const TwoQubitState::Amplitudes& v) {
  TwoQubitState::Amplitudes out{};
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) out[r] += op(r, c) * v[c];
  return out;
}

inline double vector_norm(const TwoQubitState::Amplitudes& v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

/// <psi| O |psi>, real part (O is expected Hermitian).
inline double expectation(const TwoQubitState& psi, const ComplexMatrix4& op) {
  const auto v = apply(op, psi.amplitudes());
  Complex s = 0.0;
  for (std::size_t i = 0; i < 4; ++i) s += std::conj(psi.amplitudes()[i]) * v[i];
  return s.real();
}

// ---------------------------------------------------------------------------
// Born rule

/// |<a_{n1}, b_{n2}|psi>|^2, evaluated as ||(P_a (x) P_b) psi||^2.
inline double born_joint(const TwoQubitState& psi, const Setting& s1, const Setting& s2, Outcome a,
                         Outcome b) {
  const auto proj = kron(spin_projector(s1, a), spin_projector(s2, b));
  const double n = vector_norm(apply(proj, psi.amplitudes()));
  return std::clamp(n * n, 0.0, 1.0);
}

/// All four joint probabilities in basis order.
inline std::array<double, 4> born_table(const TwoQubitState& psi, const Setting& s1, const Setting& s2) {
  std::array<double, 4> t{};
  for (auto a : outcomes())
    for (auto b : outcomes()) t[pair_index(a, b)] = born_joint(psi, s1, s2, a, b);
  return t;
}

/// E = sum_{a,b} a b P(a,b) for a table in basis order.
inline double correlation_of(const std::array<double, 4>& table) {
  return table[0] - table[1] - table[2] + table[3];
}

inline double correlation(const TwoQubitState& psi, const Setting& s1, const Setting& s2) {
  return correlation_of(born_table(psi, s1, s2));
}

/// Alice's marginal P(a | n1), summing the joint over Bob's outcome.
inline double born_alice_marginal(const TwoQubitState& psi, const Setting& s1, const Setting& s2,
                                  Outcome a) {
  return born_joint(psi, s1, s2, a, Outcome::plus()) + born_joint(psi, s1, s2, a, Outcome::minus());
}

inline double born_bob_marginal(const TwoQubitState& psi, const Setting& s1, const Setting& s2,
                                Outcome b) {
  return born_joint(psi, s1, s2, Outcome::plus(), b) + born_joint(psi, s1, s2, Outcome::minus(), b);
}

// ---------------------------------------------------------------------------
// Anticorrelation operators, commutators, local kicks

struct AnticorrelationResiduals {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double max() const { return std::max({x, y, z}); }
};

/// ||(sigma_k (x) I + I (x) sigma_k) psi|| for k = x, y, z.
inline AnticorrelationResiduals check_anticorrelation_operator(const TwoQubitState& psi) {
  const auto residual = [&](const Matrix2& s) {
    const auto op = kron(s, Matrix2::identity()) + kron(Matrix2::identity(), s);
    return vector_norm(apply(op, psi.amplitudes()));
  };
  return {residual(pauli::x()), residual(pauli::y()), residual(pauli::z())};
}

inline ComplexMatrix4 commutator(const ComplexMatrix4& a, const ComplexMatrix4& b) {
  return a * b - b * a;
}

/// exp(-i dt O_B) |psi> for a Hermitian involution O_B, via
/// cos(dt) I - i sin(dt) O_B.
inline TwoQubitState local_unitary_kick(const TwoQubitState& psi, const ComplexMatrix4& op_b, double dt) {
  if (!op_b.is_hermitian()) throw InvalidArgument("kick operator must be Hermitian");
  if (!op_b.is_involution()) throw InvalidArgument("kick operator must satisfy O^2 = I");
  const ComplexMatrix4 u =
      Complex(std::cos(dt), 0.0) * ComplexMatrix4::identity() - Complex(0.0, std::sin(dt)) * op_b;
  return TwoQubitState::from_amplitudes(apply(u, psi.amplitudes()));
}

struct NonsignalingReport {
  double max_deviation = 0.0;
  /// Alice's marginal P(+1 | n1) under Bob's first and second setting.
  double alice_plus_marginal = 0.0;
  double alice_plus_marginal_alt = 0.0;
};

/// max_a |sum_b P(a,b|s1,s2) - sum_b P(a,b|s1,s2')|.
inline NonsignalingReport check_nonsignaling_quantum(const TwoQubitState& psi, const Setting& s1,
                                                     const Setting& s2, const Setting& s2_alt) {
  NonsignalingReport r;
  for (auto a : outcomes()) {
    const double m = born_alice_marginal(psi, s1, s2, a);
    const double m_alt = born_alice_marginal(psi, s1, s2_alt, a);
    r.max_deviation = std::max(r.max_deviation, std::abs(m - m_alt));
    if (a == Outcome::plus()) {
      r.alice_plus_marginal = m;
      r.alice_plus_marginal_alt = m_alt;
    }
  }
  return r;
}

}  // namespace bellaudit
