#pragma once

// Exact rationals and symbolic angle expressions c0 + c1*phi1 + c2*phi2 + k*pi.
//
// Grammar (whitespace between tokens is ignored):
//
//   expr     := [sign] term { sign term }
//   sign     := '+' | '-'
//   term     := number [ ['*'] symbol ] | symbol [ '/' integer ]
//   symbol   := 'phi1' | 'phi2' | 'pi'
//   number   := integer [ '/' integer ] | decimal
//   decimal  := digits '.' digits
//
// Examples: "phi1", "phi1 + pi", "-1/2 pi + phi2", "pi/4", "0.25", "3/4*pi".

#include <cctype>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>

#include "bellaudit/errors.hpp"
#include "bellaudit/quantum.hpp"

namespace bellaudit {

class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1) : num_(num), den_(den) {
    if (den == 0) throw ParseError("rational with zero denominator");
    normalize();
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  bool is_zero() const { return num_ == 0; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    const std::int64_t g = std::gcd(a.den_, b.den_);
    return Rational(a.num_ * (b.den_ / g) + b.num_ * (a.den_ / g), a.den_ / g * b.den_);
  }
  friend Rational operator-(const Rational& a) { return Rational(-a.num_, a.den_); }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend bool operator==(const Rational&, const Rational&) = default;

  std::string to_string() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
  }

 private:
  void normalize() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const std::int64_t g = std::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

struct AngleExpr {
  Rational constant;
  Rational phi1;
  Rational phi2;
  Rational pi;

  double evaluate(double phi1_value, double phi2_value) const {
    return constant.to_double() + phi1.to_double() * phi1_value + phi2.to_double() * phi2_value +
           pi.to_double() * kPi;
  }

  bool depends_on_settings() const { return !phi1.is_zero() || !phi2.is_zero(); }

  friend bool operator==(const AngleExpr&, const AngleExpr&) = default;

  std::string to_string() const {
    std::string out;
    const auto append = [&](const Rational& c, std::string_view sym) {
      if (c.is_zero()) return;
      Rational mag = c.num() < 0 ? -c : c;
      out += out.empty() ? (c.num() < 0 ? "-" : "") : (c.num() < 0 ? " - " : " + ");
      if (sym.empty()) {
        out += mag.to_string();
      } else {
        if (!(mag == Rational(1))) out += mag.to_string() + " ";
        out += sym;
      }
    };
    append(constant, "");
    append(phi1, "phi1");
    append(phi2, "phi2");
    append(pi, "pi");
    return out.empty() ? "0" : out;
  }
};

namespace detail {

class AngleLexer {
 public:
  explicit AngleLexer(std::string_view text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool consume(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool consume_word(std::string_view w) {
    skip_ws();
    if (text_.substr(pos_, w.size()) == w) {
      const std::size_t end = pos_ + w.size();
      if (end < text_.size() && std::isalnum(static_cast<unsigned char>(text_[end]))) return false;
      pos_ = end;
      return true;
    }
    return false;
  }

  std::int64_t integer() {
    skip_ws();
    const std::size_t start = pos_;
    std::int64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      if (v > (INT64_MAX - 9) / 10) fail("integer overflow");
      v = v * 10 + (text_[pos_] - '0');
      ++pos_;
    }
    if (pos_ == start) fail("expected digits");
    return v;
  }

  /// integer [ '/' integer ] | digits '.' digits
  Rational number() {
    std::int64_t whole = integer();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      std::int64_t den = 1;
      std::int64_t frac = 0;
      const std::size_t frac_start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        if (den > INT64_MAX / 10 || frac > (INT64_MAX - 9) / 10) fail("decimal too long");
        frac = frac * 10 + (text_[pos_] - '0');
        den *= 10;
        ++pos_;
      }
      if (pos_ == frac_start) fail("expected digits after '.'");
      return Rational(whole * den + frac, den);
    }
    if (consume('/')) return Rational(whole, nonzero(integer()));
    return Rational(whole);
  }

  std::int64_t nonzero(std::int64_t v) {
    if (v == 0) fail("zero denominator");
    return v;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("angle expression '" + std::string(text_) + "': " + what + " at offset " +
                     std::to_string(pos_));
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses the symbolic grammar above. When `allow_settings` is false, phi1 and
/// phi2 are rejected.
inline AngleExpr parse_angle_expr(std::string_view text, bool allow_settings = true) {
  detail::AngleLexer lex(text);
  AngleExpr out;
  if (lex.at_end()) lex.fail("empty expression");
  bool first = true;
  while (!lex.at_end()) {
    Rational sign(1);
    if (lex.consume('+')) {
    } else if (lex.consume('-')) {
      sign = Rational(-1);
    } else if (!first) {
      lex.fail("expected '+' or '-'");
    }
    first = false;

    Rational coeff(1);
    bool has_number = false;
    if (std::isdigit(static_cast<unsigned char>(lex.peek()))) {
      coeff = lex.number();
      has_number = true;
      lex.consume('*');
    }

    Rational* slot = nullptr;
    if (lex.consume_word("phi1")) {
      slot = &out.phi1;
    } else if (lex.consume_word("phi2")) {
      slot = &out.phi2;
    } else if (lex.consume_word("pi")) {
      slot = &out.pi;
    } else if (!has_number) {
      lex.fail("expected number or symbol");
    }

    if (slot == nullptr) {
      out.constant = out.constant + sign * coeff;
      continue;
    }
    if (slot != &out.pi && !allow_settings) lex.fail("setting symbols not allowed here");
    if (lex.consume('/')) coeff = coeff * Rational(1, lex.nonzero(lex.integer()));
    *slot = *slot + sign * coeff;
  }
  return out;
}

/// Setting-free angle literal, e.g. "0.5", "pi/4", "3/4 pi".
inline double parse_angle(std::string_view text) {
  return parse_angle_expr(text, /*allow_settings=*/false).evaluate(0.0, 0.0);
}

/// Exact rational literal: "1/2", "3", "0.25".
inline Rational parse_rational(std::string_view text) {
  detail::AngleLexer lex(text);
  bool negative = lex.consume('-');
  Rational r = lex.number();
  if (!lex.at_end()) lex.fail("trailing characters");
  return negative ? -r : r;
}

}  // namespace bellaudit
