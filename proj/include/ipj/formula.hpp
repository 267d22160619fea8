#pragma once

// Formulas of the logic. One node type backs both classes:
//
//   EFormula  alpha ::= p | ~alpha | alpha & alpha | box[a] alpha | t :[a] alpha
//   Formula   A     ::= alpha | Pr>=s alpha | Pr~r alpha | ~A | A & A
//
// EFormula derives from Formula (every epistemic formula is a formula) and
// can only be built from epistemic parts, so a probability operator inside a
// probability operator or a modality is unrepresentable. A Formula whose
// tree happens to be probability-free is epistemic; as_epistemic() recovers
// the EFormula view without copying.

#include <compare>
#include <memory>
#include <optional>
#include <set>
#include <string>

#include "ipj/qeps.hpp"
#include "ipj/term.hpp"
#include "ipj/threshold.hpp"

namespace ipj {

namespace detail {
struct FormulaNode;
}

class EFormula;

class Formula {
 public:
  enum class Kind { Atom, Not, And, Box, Just, ProbGeq, ProbApprox };

  static Formula negation(const Formula& a);
  static Formula conjunction(const Formula& a, const Formula& b);
  static Formula prob_geq(Threshold s, const EFormula& a);
  /// r must be a rational in [0,1]; throws Range otherwise.
  static Formula prob_approx(Rational r, const EFormula& a);

  Kind kind() const;
  bool is_epistemic() const;
  std::optional<EFormula> epistemic() const;
  /// Throws NestedProbability when the formula mentions a probability operator.
  EFormula as_epistemic() const;

  const std::string& name() const;       // Atom
  Agent agent() const;                   // Box, Just
  const Term& term() const;              // Just
  const Threshold& threshold() const;    // ProbGeq
  const Rational& approx_value() const;  // ProbApprox
  Formula arg() const;                   // Not
  Formula lhs() const;                   // And
  Formula rhs() const;                   // And
  EFormula body() const;                 // Box, Just, ProbGeq, ProbApprox

  /// A template parameter occurs in some threshold.
  bool has_parameter() const;
  std::size_t size() const;

  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);
  friend bool operator==(const Formula& a, const Formula& b) { return (a <=> b) == 0; }

 protected:
  explicit Formula(std::shared_ptr<const detail::FormulaNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const detail::FormulaNode> node_;
};

class EFormula : public Formula {
 public:
  static EFormula atom(std::string name);
  static EFormula negation(const EFormula& a);
  static EFormula conjunction(const EFormula& a, const EFormula& b);
  static EFormula box(Agent agent, const EFormula& a);
  static EFormula just(Term t, Agent agent, const EFormula& a);

  EFormula arg() const;
  EFormula lhs() const;
  EFormula rhs() const;

 private:
  friend class Formula;
  explicit EFormula(std::shared_ptr<const detail::FormulaNode> node) : Formula(std::move(node)) {}
};

// Abbreviations. The epistemic overloads stay epistemic.
Formula implies(const Formula& a, const Formula& b);
EFormula implies(const EFormula& a, const EFormula& b);
Formula disjunction(const Formula& a, const Formula& b);
EFormula disjunction(const EFormula& a, const EFormula& b);
Formula iff(const Formula& a, const Formula& b);
EFormula iff(const EFormula& a, const EFormula& b);

/// Pr<=s a  :=  Pr>=(1-s) ~a
Formula prob_leq(const Threshold& s, const EFormula& a);
/// Pr<s a   :=  ~Pr>=s a
Formula prob_lt(const Threshold& s, const EFormula& a);
/// Pr>s a   :=  ~Pr<=s a
Formula prob_gt(const Threshold& s, const EFormula& a);
/// Pr=s a   :=  Pr<=s a & Pr>=s a
Formula prob_eq(const Threshold& s, const EFormula& a);

/// Every node of the formula, including the formula itself.
std::set<Formula> subformulas(const Formula& f);
/// Epistemic subformulas only.
std::set<EFormula> epistemic_subformulas(const Formula& f);
/// Terms occurring in justification assertions, with their subterms.
std::set<Term> terms_of(const Formula& f);
std::set<std::string> atoms_of(const Formula& f);

}  // namespace ipj
