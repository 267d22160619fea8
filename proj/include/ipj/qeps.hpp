#pragma once

// Exact arithmetic in the Hardy field Q[e] of rational functions of a fixed
// positive infinitesimal e. Values are kept in the canonical form
//
//     e^shift * (a0 + a1 e + ...) / (1 + b1 e + ...)
//
// with a0 != 0, gcd(num, den) = 1 and the denominator's constant term
// scaled to 1. Zero is the empty numerator with shift 0. Equal rational
// functions therefore have identical representations.

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace ipj {

using Rational = mpq_class;
using Poly = std::vector<Rational>;  // index = power of e

Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
Rational rational_pow(const Rational& base, unsigned exponent);

class QEps {
 public:
  QEps() : den_{Rational(1)} {}
  QEps(const Rational& q);  // NOLINT(google-explicit-constructor)
  QEps(long q) : QEps(Rational(q)) {}  // NOLINT(google-explicit-constructor)

  static QEps epsilon();
  static QEps epsilon_pow(int k);

  /// Builds (num / den) and normalizes. Throws DivisionByZero on a zero den.
  static QEps from_polys(Poly num, Poly den, int shift = 0);

  int shift() const { return shift_; }
  const Poly& numerator() const { return num_; }
  const Poly& denominator() const { return den_; }

  bool is_zero() const { return num_.empty(); }
  /// True when the value has no e-dependence at all.
  bool is_rational() const;
  /// Requires is_rational().
  Rational as_rational() const;
  /// Sign in the field order: -1, 0 or 1.
  int sign() const;
  /// Finite and at most infinitesimally away from zero: shift >= 1 or zero.
  bool is_infinitesimal() const { return is_zero() || shift_ >= 1; }

  QEps operator-() const;
  friend QEps operator+(const QEps& a, const QEps& b);
  friend QEps operator-(const QEps& a, const QEps& b);
  friend QEps operator*(const QEps& a, const QEps& b);
  friend QEps operator/(const QEps& a, const QEps& b);
  QEps& operator+=(const QEps& o) { return *this = *this + o; }
  QEps& operator-=(const QEps& o) { return *this = *this - o; }
  QEps& operator*=(const QEps& o) { return *this = *this * o; }

  friend bool operator==(const QEps& a, const QEps& b);
  friend std::strong_ordering operator<=>(const QEps& a, const QEps& b);

 private:
  static QEps normalize(Poly num, Poly den, int shift);

  int shift_ = 0;
  Poly num_;
  Poly den_;
};

QEps inv(const QEps& a);

enum class Order { LT, EQ, GT };
Order compare(const QEps& a, const QEps& b);

/// Structural order on canonical representations. Total, but unrelated to
/// the field order; used for keying containers.
std::strong_ordering structural_compare(const QEps& a, const QEps& b);

/// Standard part of a finite element. Throws Range on infinite values.
Rational std_part(const QEps& a);

/// a lies in [r - 1/n, r + 1/n] for every positive integer n.
bool approx_eq(const QEps& a, const Rational& r);

QEps min(const QEps& a, const QEps& b);
QEps max(const QEps& a, const QEps& b);

/// Literal grammar:
///   rational := int | int "/" posint
///   monomial := rational | rational "e" | rational "e^" posint
///   poly     := monomial ("+" monomial)*
///   qeps     := poly | "(" poly ")" "/" "(" poly ")"
/// Values with a negative e-shift (infinite elements) are rejected.
QEps parse_qeps(std::string_view text);
std::string to_string(const QEps& a);

/// True when 0 <= a <= 1.
bool in_unit_interval(const QEps& a);

}  // namespace ipj
