#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <set>
#include <string>

namespace ipj {

enum class Agent { Prover, Verifier };

inline char agent_letter(Agent a) { return a == Agent::Prover ? 'P' : 'V'; }

/// Protocol complexity: a natural number or omega, with omega above every n.
class Complexity {
 public:
  static Complexity finite(std::uint64_t n) { return Complexity(false, n); }
  static Complexity omega() { return Complexity(true, 0); }

  bool is_omega() const { return omega_; }
  /// Requires !is_omega().
  std::uint64_t value() const { return n_; }

  friend bool operator==(const Complexity&, const Complexity&) = default;
  friend std::strong_ordering operator<=>(const Complexity& a, const Complexity& b) {
    if (a.omega_ != b.omega_) return a.omega_ ? std::strong_ordering::greater : std::strong_ordering::less;
    return a.n_ <=> b.n_;
  }

 private:
  Complexity(bool omega, std::uint64_t n) : omega_(omega), n_(n) {}
  bool omega_;
  std::uint64_t n_;
};

namespace detail {
struct TermNode;
}

/// Justification term: c | x | t*t | t+t | !t | f[n](t). Immutable; copies
/// share structure.
class Term {
 public:
  enum class Kind { Constant, Variable, App, Sum, Bang, Proto };

  static Term constant(std::string name);
  static Term variable(std::string name);
  static Term app(Term left, Term right);
  static Term sum(Term left, Term right);
  static Term bang(Term inner);
  static Term proto(Complexity complexity, Term inner);

  Kind kind() const;
  /// Constant and Variable only.
  const std::string& name() const;
  /// App and Sum.
  const Term& left() const;
  const Term& right() const;
  /// Bang and Proto.
  const Term& inner() const;
  /// Proto only.
  Complexity complexity() const;

  /// No f[n] anywhere inside.
  bool is_protocol_free() const;
  std::size_t size() const;

  friend std::strong_ordering operator<=>(const Term& a, const Term& b);
  friend bool operator==(const Term& a, const Term& b) { return (a <=> b) == 0; }

 private:
  explicit Term(std::shared_ptr<const detail::TermNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const detail::TermNode> node_;
};

/// All subterms including the term itself.
void collect_subterms(const Term& t, std::set<Term>& out);

}  // namespace ipj
