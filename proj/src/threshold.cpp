#include "ipj/threshold.hpp"

#include <vector>

#include "ipj/error.hpp"

namespace ipj {

Threshold Threshold::nu_term(const Rational& coeff, unsigned power) {
  Threshold t;
  if (power == 0) return Threshold(QEps(coeff));
  t.nu_[power] = coeff;
  t.drop_zeros();
  return t;
}

Threshold Threshold::sigma_term(const Rational& coeff) {
  Threshold t;
  t.sigma_ = coeff;
  return t;
}

const QEps& Threshold::constant() const {
  if (!is_constant()) throw Error(ErrorKind::Template, "threshold " + to_string(*this) + " mentions a parameter");
  return base_;
}

bool Threshold::mentions(Parameter p) const {
  switch (p) {
    case Parameter::Nu: return !nu_.empty();
    case Parameter::Sigma: return sgn(sigma_) != 0;
    case Parameter::None: return !is_constant();
  }
  return false;
}

void Threshold::drop_zeros() {
  for (auto it = nu_.begin(); it != nu_.end();) {
    if (sgn(it->second) == 0) {
      it = nu_.erase(it);
    } else {
      ++it;
    }
  }
}

Threshold Threshold::operator-() const {
  Threshold t;
  t.base_ = -base_;
  for (const auto& [j, c] : nu_) t.nu_[j] = -c;
  t.sigma_ = -sigma_;
  return t;
}

Threshold operator+(const Threshold& a, const Threshold& b) {
  Threshold t;
  t.base_ = a.base_ + b.base_;
  t.nu_ = a.nu_;
  for (const auto& [j, c] : b.nu_) t.nu_[j] += c;
  t.sigma_ = a.sigma_ + b.sigma_;
  t.drop_zeros();
  return t;
}

Threshold Threshold::substitute_nu(std::uint64_t nu) const {
  Threshold t;
  t.base_ = base_;
  for (const auto& [j, c] : nu_) t.base_ += QEps(c / rational_pow(Rational(mpz_class(std::to_string(nu))), j));
  t.sigma_ = sigma_;
  return t;
}

Threshold Threshold::substitute_sigma(const QEps& sigma) const {
  Threshold t;
  t.base_ = base_ + QEps(sigma_) * sigma;
  t.nu_ = nu_;
  return t;
}

std::strong_ordering operator<=>(const Threshold& a, const Threshold& b) {
  if (auto c = structural_compare(a.base_, b.base_); c != 0) return c;
  if (auto c = a.nu_.size() <=> b.nu_.size(); c != 0) return c;
  for (auto ia = a.nu_.begin(), ib = b.nu_.begin(); ia != a.nu_.end(); ++ia, ++ib) {
    if (auto c = ia->first <=> ib->first; c != 0) return c;
    if (int c = cmp(ia->second, ib->second); c != 0) return c <=> 0;
  }
  return cmp(a.sigma_, b.sigma_) <=> 0;
}

std::string to_string(const Threshold& t) {
  std::string out;
  if (!t.base().is_zero() || t.is_constant()) out = to_string(t.base());
  auto append = [&out](const std::string& m) {
    if (!out.empty()) out += " + ";
    out += m;
  };
  for (const auto& [j, c] : t.nu_terms()) append(to_string(c) + "/v" + (j > 1 ? "^" + std::to_string(j) : ""));
  if (sgn(t.sigma_coeff()) != 0) append(to_string(t.sigma_coeff()) + " sigma");
  return out;
}

namespace {

enum class Sign { Zero, Pos, NonNeg, Neg, NonPos, Varies, Unknown };

Sign sign_of_constant(const QEps& q) {
  int s = q.sign();
  return s == 0 ? Sign::Zero : (s > 0 ? Sign::Pos : Sign::Neg);
}

Sign combine(const std::vector<QEps>& coeffs, const QEps& at_start) {
  bool all_zero = true;
  bool nonneg = true;
  bool nonpos = true;
  for (const auto& c : coeffs) {
    int s = c.sign();
    if (s != 0) all_zero = false;
    if (s < 0) nonneg = false;
    if (s > 0) nonpos = false;
  }
  if (all_zero) return Sign::Zero;
  if (nonneg) return at_start.sign() > 0 ? Sign::Pos : Sign::NonNeg;
  if (nonpos) return at_start.sign() < 0 ? Sign::Neg : Sign::NonPos;
  return Sign::Unknown;
}

// Sign of d over the parameter range. For nu the expression is multiplied by
// nu^J (positive) and shifted to x = nu - N; nonnegative coefficients of the
// shifted polynomial certify a sign on all x >= 0.
Sign sign_over_range(const Threshold& d, const ParamContext& ctx) {
  bool has_nu = d.mentions(Parameter::Nu);
  bool has_sigma = d.mentions(Parameter::Sigma);
  if (!has_nu && !has_sigma) return sign_of_constant(d.base());
  if (has_nu && has_sigma) return Sign::Unknown;
  if (has_sigma) {
    if (ctx.param != Parameter::Sigma) return Sign::Unknown;
    QEps at0 = d.base();
    QEps at1 = d.base() + QEps(d.sigma_coeff());
    Sign s0 = sign_of_constant(at0);
    Sign s1 = sign_of_constant(at1);
    if (s0 == Sign::Zero && s1 == Sign::Zero) return Sign::Zero;
    bool ge = at0.sign() >= 0 && at1.sign() >= 0;
    bool le = at0.sign() <= 0 && at1.sign() <= 0;
    if (ge) return (s0 == Sign::Pos && s1 == Sign::Pos) ? Sign::Pos : Sign::NonNeg;
    if (le) return (s0 == Sign::Neg && s1 == Sign::Neg) ? Sign::Neg : Sign::NonPos;
    return Sign::Varies;
  }
  if (ctx.param != Parameter::Nu) return Sign::Unknown;
  unsigned top = d.nu_terms().rbegin()->first;
  // coefficient of nu^deg in nu^top * d(nu)
  std::vector<QEps> poly(top + 1, QEps());
  poly[top] = d.base();
  for (const auto& [j, c] : d.nu_terms()) poly[top - j] += QEps(c);
  Rational start(mpz_class(std::to_string(ctx.nu_min)));
  std::vector<QEps> shifted(top + 1, QEps());
  for (unsigned i = 0; i <= top; ++i) {
    mpz_class binom = 1;
    Rational pow_n = 1;
    for (unsigned deg = i; deg <= top; ++deg) {
      if (deg > i) {
        binom = binom * deg / (deg - i);
        pow_n *= start;
      }
      shifted[i] += poly[deg] * QEps(Rational(binom) * pow_n);
    }
  }
  return combine(shifted, shifted[0]);
}

QEps value_at_start(const Threshold& d, const ParamContext& ctx) {
  Threshold t = d;
  if (ctx.param == Parameter::Nu) t = t.substitute_nu(ctx.nu_min);
  if (ctx.param == Parameter::Sigma) t = t.substitute_sigma(QEps(0));
  return t.is_constant() ? t.base() : QEps();
}

}  // namespace

Verdict symbolic_lt(const Threshold& a, const Threshold& b, const ParamContext& ctx) {
  Threshold d = a - b;
  switch (sign_over_range(d, ctx)) {
    case Sign::Neg: return Verdict::True;
    case Sign::Unknown:
      if (d.mentions(Parameter::Nu) && ctx.param == Parameter::Nu && !d.mentions(Parameter::Sigma) &&
          value_at_start(d, ctx).sign() >= 0)
        return Verdict::False;
      return Verdict::Undecidable;
    default: return Verdict::False;
  }
}

Verdict symbolic_le(const Threshold& a, const Threshold& b, const ParamContext& ctx) {
  Threshold d = a - b;
  switch (sign_over_range(d, ctx)) {
    case Sign::Neg:
    case Sign::NonPos:
    case Sign::Zero: return Verdict::True;
    case Sign::Unknown:
      if (d.mentions(Parameter::Nu) && ctx.param == Parameter::Nu && !d.mentions(Parameter::Sigma) &&
          value_at_start(d, ctx).sign() > 0)
        return Verdict::False;
      return Verdict::Undecidable;
    default: return Verdict::False;
  }
}

Verdict symbolic_eq(const Threshold& a, const Threshold& b, const ParamContext& ctx) {
  Threshold d = a - b;
  if (d.mentions(Parameter::Nu) && d.mentions(Parameter::Sigma)) return Verdict::Undecidable;
  if ((d.mentions(Parameter::Nu) && ctx.param != Parameter::Nu) ||
      (d.mentions(Parameter::Sigma) && ctx.param != Parameter::Sigma))
    return Verdict::Undecidable;
  // A nonzero rational function of one parameter has finitely many roots.
  return (d.is_constant() && d.base().is_zero()) ? Verdict::True : Verdict::False;
}

}  // namespace ipj
