#pragma once

// Probability thresholds. Ordinary formulas carry constant thresholds (a
// QEps in [0,1]). Template derivations for the infinitary rules may carry
// one distinguished parameter in threshold position:
//
//   nu    - an integer bound below, occurring as c / nu^j
//   sigma - an arbitrary element of the unit interval, occurring as c * sigma
//
// A threshold is base + sum_j c_j / nu^j + c_sigma * sigma.

#include <compare>
#include <cstdint>
#include <map>
#include <string>

#include "ipj/qeps.hpp"

namespace ipj {

enum class Parameter { None, Nu, Sigma };

class Threshold {
 public:
  Threshold() = default;
  Threshold(QEps base) : base_(std::move(base)) {}  // NOLINT(google-explicit-constructor)
  Threshold(long q) : base_(q) {}                   // NOLINT(google-explicit-constructor)

  static Threshold nu_term(const Rational& coeff, unsigned power);
  static Threshold sigma_term(const Rational& coeff);

  const QEps& base() const { return base_; }
  const std::map<unsigned, Rational>& nu_terms() const { return nu_; }
  const Rational& sigma_coeff() const { return sigma_; }

  bool is_constant() const { return nu_.empty() && sgn(sigma_) == 0; }
  /// Throws Template when the threshold mentions a parameter.
  const QEps& constant() const;
  bool mentions(Parameter p) const;

  Threshold operator-() const;
  friend Threshold operator+(const Threshold& a, const Threshold& b);
  friend Threshold operator-(const Threshold& a, const Threshold& b) { return a + (-b); }

  Threshold substitute_nu(std::uint64_t nu) const;
  Threshold substitute_sigma(const QEps& sigma) const;

  friend bool operator==(const Threshold& a, const Threshold& b) { return (a <=> b) == 0; }
  friend std::strong_ordering operator<=>(const Threshold& a, const Threshold& b);

 private:
  void drop_zeros();

  QEps base_;
  std::map<unsigned, Rational> nu_;
  Rational sigma_{0};
};

inline Threshold one_minus(const Threshold& s) { return Threshold(1) - s; }

std::string to_string(const Threshold& t);

/// Range over which a parametric comparison must hold.
struct ParamContext {
  Parameter param = Parameter::None;
  /// nu ranges over integers >= nu_min.
  std::uint64_t nu_min = 1;
};

enum class Verdict { True, False, Undecidable };

/// Whether a < b (resp. <=, ==) holds for every admissible parameter value.
/// False means it fails for at least one value. Undecidable is returned
/// when the conservative procedure can settle neither.
Verdict symbolic_lt(const Threshold& a, const Threshold& b, const ParamContext& ctx);
Verdict symbolic_le(const Threshold& a, const Threshold& b, const ParamContext& ctx);
Verdict symbolic_eq(const Threshold& a, const Threshold& b, const ParamContext& ctx);

}  // namespace ipj
