#include "ipj/qeps.hpp"

#include <algorithm>
#include <utility>

#include "ipj/error.hpp"
#include "literal.hpp"

namespace ipj {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::Range: return "RangeError";
    case ErrorKind::Syntax: return "SyntaxError";
    case ErrorKind::NestedProbability: return "NestedProbability";
    case ErrorKind::Template: return "TemplateError";
    case ErrorKind::Undecidable: return "Undecidable";
    case ErrorKind::UnknownAtom: return "UnknownAtom";
    case ErrorKind::Universe: return "UniverseError";
    case ErrorKind::Model: return "ModelError";
    case ErrorKind::Size: return "SizeError";
    case ErrorKind::Config: return "ConfigError";
    case ErrorKind::DuplicateEntry: return "DuplicateEntry";
    case ErrorKind::Structure: return "StructureError";
  }
  return "Error";
}

namespace {

void trim(Poly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  trim(out);
  return out;
}

Poly poly_add(const Poly& a, const Poly& b) {
  Poly out(std::max(a.size(), b.size()), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  trim(out);
  return out;
}

Poly poly_shift(const Poly& a, int k) {
  if (a.empty() || k == 0) return a;
  Poly out(static_cast<std::size_t>(k), Rational(0));
  out.insert(out.end(), a.begin(), a.end());
  return out;
}

// a = q*b + r with deg r < deg b; b nonzero.
std::pair<Poly, Poly> poly_divmod(Poly a, const Poly& b) {
  Poly q;
  if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, Rational(0));
  const Rational& lead = b.back();
  while (!a.empty() && a.size() >= b.size()) {
    std::size_t d = a.size() - b.size();
    Rational c = a.back() / lead;
    q[d] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[i + d] -= c * b[i];
    a.pop_back();
    trim(a);
  }
  trim(q);
  return {q, a};
}

Poly poly_gcd(Poly a, Poly b) {
  while (!b.empty()) {
    Poly r = poly_divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    Rational lead = a.back();
    for (auto& c : a) c /= lead;
  }
  return a;
}

std::size_t low_zeros(const Poly& p) {
  std::size_t k = 0;
  while (k < p.size() && sgn(p[k]) == 0) ++k;
  return k;
}

std::string monomial(const Rational& c, int power) {
  std::string s = to_string(c);
  if (power == 1) s += " e";
  if (power > 1) s += " e^" + std::to_string(power);
  return s;
}

std::string poly_string(const Poly& p, int shift) {
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (sgn(p[i]) == 0) continue;
    if (!out.empty()) out += " + ";
    out += monomial(p[i], static_cast<int>(i) + shift);
  }
  return out.empty() ? "0" : out;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  detail::Cursor cur(text);
  Rational q = detail::read_rational(cur);
  cur.skip_ws();
  if (!cur.at_end()) cur.fail(ErrorKind::Syntax, "trailing input after rational");
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational rational_pow(const Rational& base, unsigned exponent) {
  Rational out(1);
  for (unsigned i = 0; i < exponent; ++i) out *= base;
  return out;
}

QEps::QEps(const Rational& q) : den_{Rational(1)} {
  if (sgn(q) != 0) {
    num_.push_back(q);
    num_.back().canonicalize();
  }
}

QEps QEps::epsilon() { return epsilon_pow(1); }

QEps QEps::epsilon_pow(int k) {
  QEps e;
  e.num_ = {Rational(1)};
  e.shift_ = k;
  return e;
}

QEps QEps::from_polys(Poly num, Poly den, int shift) {
  return normalize(std::move(num), std::move(den), shift);
}

QEps QEps::normalize(Poly num, Poly den, int shift) {
  for (auto& c : num) c.canonicalize();
  for (auto& c : den) c.canonicalize();
  trim(num);
  trim(den);
  if (den.empty()) throw Error(ErrorKind::DivisionByZero, "zero denominator polynomial");
  QEps out;
  if (num.empty()) return out;
  std::size_t zn = low_zeros(num);
  std::size_t zd = low_zeros(den);
  num.erase(num.begin(), num.begin() + static_cast<std::ptrdiff_t>(zn));
  den.erase(den.begin(), den.begin() + static_cast<std::ptrdiff_t>(zd));
  shift += static_cast<int>(zn) - static_cast<int>(zd);
  if (den.size() > 1 && num.size() > 1) {
    Poly g = poly_gcd(num, den);
    if (g.size() > 1) {
      num = poly_divmod(num, g).first;
      den = poly_divmod(den, g).first;
    }
  }
  Rational c = den[0];
  for (auto& x : num) x /= c;
  for (auto& x : den) x /= c;
  out.shift_ = shift;
  out.num_ = std::move(num);
  out.den_ = std::move(den);
  return out;
}

bool QEps::is_rational() const {
  return is_zero() || (shift_ == 0 && num_.size() == 1 && den_.size() == 1);
}

Rational QEps::as_rational() const {
  if (!is_rational()) throw Error(ErrorKind::Range, "value " + to_string(*this) + " is not rational");
  return is_zero() ? Rational(0) : num_[0];
}

int QEps::sign() const { return is_zero() ? 0 : sgn(num_[0]); }

QEps QEps::operator-() const {
  QEps out = *this;
  for (auto& c : out.num_) c = -c;
  return out;
}

QEps operator+(const QEps& a, const QEps& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  int k = std::min(a.shift_, b.shift_);
  Poly na = poly_shift(a.num_, a.shift_ - k);
  Poly nb = poly_shift(b.num_, b.shift_ - k);
  Poly num = poly_add(poly_mul(na, b.den_), poly_mul(nb, a.den_));
  return QEps::normalize(std::move(num), poly_mul(a.den_, b.den_), k);
}

QEps operator-(const QEps& a, const QEps& b) { return a + (-b); }

QEps operator*(const QEps& a, const QEps& b) {
  if (a.is_zero() || b.is_zero()) return QEps();
  return QEps::normalize(poly_mul(a.num_, b.num_), poly_mul(a.den_, b.den_), a.shift_ + b.shift_);
}

QEps operator/(const QEps& a, const QEps& b) { return a * inv(b); }

QEps inv(const QEps& a) {
  if (a.is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
  return QEps::from_polys(a.denominator(), a.numerator(), -a.shift());
}

bool operator==(const QEps& a, const QEps& b) { return structural_compare(a, b) == 0; }

std::strong_ordering operator<=>(const QEps& a, const QEps& b) {
  int s = (a - b).sign();
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Order compare(const QEps& a, const QEps& b) {
  int s = (a - b).sign();
  return s < 0 ? Order::LT : (s > 0 ? Order::GT : Order::EQ);
}

std::strong_ordering structural_compare(const QEps& a, const QEps& b) {
  if (auto c = a.shift() <=> b.shift(); c != 0) return c;
  auto cmp_poly = [](const Poly& x, const Poly& y) {
    if (auto c = x.size() <=> y.size(); c != 0) return c;
    for (std::size_t i = 0; i < x.size(); ++i) {
      int c = cmp(x[i], y[i]);
      if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
  };
  if (auto c = cmp_poly(a.numerator(), b.numerator()); c != 0) return c;
  return cmp_poly(a.denominator(), b.denominator());
}

Rational std_part(const QEps& a) {
  if (a.is_zero() || a.shift() > 0) return Rational(0);
  if (a.shift() < 0) throw Error(ErrorKind::Range, "standard part of an infinite value");
  return a.numerator()[0];
}

bool approx_eq(const QEps& a, const Rational& r) { return (a - QEps(r)).is_infinitesimal(); }

QEps min(const QEps& a, const QEps& b) { return compare(a, b) == Order::GT ? b : a; }
QEps max(const QEps& a, const QEps& b) { return compare(a, b) == Order::LT ? b : a; }

bool in_unit_interval(const QEps& a) { return a.sign() >= 0 && (QEps(1) - a).sign() >= 0; }

std::string to_string(const QEps& a) {
  if (a.is_zero()) return "0";
  int ns = std::max(a.shift(), 0);
  int ds = std::max(-a.shift(), 0);
  const Poly& den = a.denominator();
  if (ds == 0 && den.size() == 1 && den[0] == 1) return poly_string(a.numerator(), ns);
  return "(" + poly_string(a.numerator(), ns) + ")/(" + poly_string(den, ds) + ")";
}

QEps parse_qeps(std::string_view text) {
  detail::Cursor cur(text);
  QEps q = detail::read_qeps(cur);
  cur.skip_ws();
  if (!cur.at_end()) cur.fail(ErrorKind::Syntax, "trailing input after literal");
  return q;
}

namespace detail {

Rational read_rational(Cursor& cur) {
  std::string num = cur.read_int();
  std::string den = "1";
  if (cur.peek() == '/' && std::isdigit(static_cast<unsigned char>(cur.peek_at(1)))) {
    cur.reset(cur.pos() + 1);
    den = cur.read_int();
  }
  mpz_class d(den);
  if (d == 0) cur.fail(ErrorKind::DivisionByZero, "zero denominator");
  Rational q(mpz_class(num), d);
  q.canonicalize();
  return q;
}

unsigned read_eps_power(Cursor& cur) {
  std::size_t save = cur.pos();
  cur.skip_ws();
  if (cur.peek() != 'e' || (Cursor::ident_char(cur.peek_at(1)))) {
    cur.reset(save);
    return 0;
  }
  cur.reset(cur.pos() + 1);
  if (cur.peek() != '^') return 1;
  cur.reset(cur.pos() + 1);
  std::string k = cur.read_int();
  if (k[0] == '-' || k == "0") cur.fail(ErrorKind::Range, "e exponent must be positive");
  return static_cast<unsigned>(std::stoul(k));
}

Poly read_poly(Cursor& cur) {
  Poly p;
  do {
    Rational c = read_rational(cur);
    unsigned k = read_eps_power(cur);
    if (p.size() <= k) p.resize(k + 1, Rational(0));
    p[k] += c;
  } while (cur.accept("+"));
  return p;
}

QEps read_qeps(Cursor& cur) {
  QEps q;
  if (cur.accept("(")) {
    Poly num = read_poly(cur);
    cur.expect(")");
    cur.expect("/");
    cur.expect("(");
    Poly den = read_poly(cur);
    cur.expect(")");
    try {
      q = QEps::from_polys(std::move(num), std::move(den));
    } catch (const Error& e) {
      cur.fail(e.kind(), e.what());
    }
  } else {
    q = QEps::from_polys(read_poly(cur), {Rational(1)});
  }
  if (q.shift() < 0) cur.fail(ErrorKind::Range, "literal denotes an infinite value");
  return q;
}

}  // namespace detail

}  // namespace ipj
