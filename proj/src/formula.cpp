#include "ipj/formula.hpp"

#include <stdexcept>

#include "ipj/error.hpp"

namespace ipj {

namespace detail {

struct FormulaNode {
  Formula::Kind kind;
  std::string name;
  Agent agent = Agent::Prover;
  std::optional<Term> term;
  Threshold threshold;
  Rational approx{0};
  std::shared_ptr<const FormulaNode> a;
  std::shared_ptr<const FormulaNode> b;
  bool epistemic = true;
  bool parametric = false;
  std::size_t size = 1;
};

}  // namespace detail

using detail::FormulaNode;

namespace {

using NodePtr = std::shared_ptr<const FormulaNode>;

std::shared_ptr<FormulaNode> make(Formula::Kind kind, NodePtr a = nullptr, NodePtr b = nullptr) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = kind;
  for (const auto& child : {a, b}) {
    if (!child) continue;
    n->epistemic = n->epistemic && child->epistemic;
    n->parametric = n->parametric || child->parametric;
    n->size += child->size;
  }
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

const FormulaNode& expect(const NodePtr& n, std::initializer_list<Formula::Kind> kinds, const char* what) {
  for (auto k : kinds)
    if (n->kind == k) return *n;
  throw std::logic_error(std::string("Formula::") + what + " on wrong kind");
}

std::strong_ordering compare_nodes(const FormulaNode& x, const FormulaNode& y) {
  if (&x == &y) return std::strong_ordering::equal;
  if (auto c = x.kind <=> y.kind; c != 0) return c;
  switch (x.kind) {
    case Formula::Kind::Atom:
      return x.name <=> y.name;
    case Formula::Kind::Not:
      return compare_nodes(*x.a, *y.a);
    case Formula::Kind::And:
      if (auto c = compare_nodes(*x.a, *y.a); c != 0) return c;
      return compare_nodes(*x.b, *y.b);
    case Formula::Kind::Box:
      if (auto c = x.agent <=> y.agent; c != 0) return c;
      return compare_nodes(*x.a, *y.a);
    case Formula::Kind::Just:
      if (auto c = x.agent <=> y.agent; c != 0) return c;
      if (auto c = *x.term <=> *y.term; c != 0) return c;
      return compare_nodes(*x.a, *y.a);
    case Formula::Kind::ProbGeq:
      if (auto c = x.threshold <=> y.threshold; c != 0) return c;
      return compare_nodes(*x.a, *y.a);
    case Formula::Kind::ProbApprox:
      if (int c = cmp(x.approx, y.approx); c != 0) return c <=> 0;
      return compare_nodes(*x.a, *y.a);
  }
  return std::strong_ordering::equal;
}

}  // namespace

Formula Formula::negation(const Formula& a) { return Formula(make(Kind::Not, a.node_)); }

Formula Formula::conjunction(const Formula& a, const Formula& b) { return Formula(make(Kind::And, a.node_, b.node_)); }

Formula Formula::prob_geq(Threshold s, const EFormula& a) {
  if (s.is_constant() && !in_unit_interval(s.base()))
    throw Error(ErrorKind::Range, "threshold " + to_string(s) + " outside [0,1]");
  auto n = make(Kind::ProbGeq, a.node_);
  n->epistemic = false;
  n->parametric = !s.is_constant();
  n->threshold = std::move(s);
  return Formula(std::move(n));
}

Formula Formula::prob_approx(Rational r, const EFormula& a) {
  r.canonicalize();
  if (sgn(r) < 0 || r > 1) throw Error(ErrorKind::Range, "approximate threshold " + to_string(r) + " outside [0,1]");
  auto n = make(Kind::ProbApprox, a.node_);
  n->epistemic = false;
  n->approx = std::move(r);
  return Formula(std::move(n));
}

Formula::Kind Formula::kind() const { return node_->kind; }
bool Formula::is_epistemic() const { return node_->epistemic; }

std::optional<EFormula> Formula::epistemic() const {
  if (!node_->epistemic) return std::nullopt;
  return EFormula(node_);
}

EFormula Formula::as_epistemic() const {
  if (!node_->epistemic) throw Error(ErrorKind::NestedProbability, "probability operator where an epistemic formula is required");
  return EFormula(node_);
}

const std::string& Formula::name() const { return expect(node_, {Kind::Atom}, "name").name; }
Agent Formula::agent() const { return expect(node_, {Kind::Box, Kind::Just}, "agent").agent; }
const Term& Formula::term() const { return *expect(node_, {Kind::Just}, "term").term; }
const Threshold& Formula::threshold() const { return expect(node_, {Kind::ProbGeq}, "threshold").threshold; }
const Rational& Formula::approx_value() const { return expect(node_, {Kind::ProbApprox}, "approx_value").approx; }
Formula Formula::arg() const { return Formula(expect(node_, {Kind::Not}, "arg").a); }
Formula Formula::lhs() const { return Formula(expect(node_, {Kind::And}, "lhs").a); }
Formula Formula::rhs() const { return Formula(expect(node_, {Kind::And}, "rhs").b); }

EFormula Formula::body() const {
  return EFormula(expect(node_, {Kind::Box, Kind::Just, Kind::ProbGeq, Kind::ProbApprox}, "body").a);
}

bool Formula::has_parameter() const { return node_->parametric; }
std::size_t Formula::size() const { return node_->size; }

std::strong_ordering operator<=>(const Formula& a, const Formula& b) { return compare_nodes(*a.node_, *b.node_); }

EFormula EFormula::atom(std::string name) {
  auto n = make(Kind::Atom);
  n->name = std::move(name);
  return EFormula(std::move(n));
}

EFormula EFormula::negation(const EFormula& a) { return EFormula(make(Kind::Not, a.node_)); }

EFormula EFormula::conjunction(const EFormula& a, const EFormula& b) {
  return EFormula(make(Kind::And, a.node_, b.node_));
}

EFormula EFormula::box(Agent agent, const EFormula& a) {
  auto n = make(Kind::Box, a.node_);
  n->agent = agent;
  return EFormula(std::move(n));
}

EFormula EFormula::just(Term t, Agent agent, const EFormula& a) {
  auto n = make(Kind::Just, a.node_);
  n->agent = agent;
  n->term = std::move(t);
  return EFormula(std::move(n));
}

EFormula EFormula::arg() const { return Formula::arg().as_epistemic(); }
EFormula EFormula::lhs() const { return Formula::lhs().as_epistemic(); }
EFormula EFormula::rhs() const { return Formula::rhs().as_epistemic(); }

Formula implies(const Formula& a, const Formula& b) {
  return Formula::negation(Formula::conjunction(a, Formula::negation(b)));
}

EFormula implies(const EFormula& a, const EFormula& b) {
  return EFormula::negation(EFormula::conjunction(a, EFormula::negation(b)));
}

Formula disjunction(const Formula& a, const Formula& b) {
  return Formula::negation(Formula::conjunction(Formula::negation(a), Formula::negation(b)));
}

EFormula disjunction(const EFormula& a, const EFormula& b) {
  return EFormula::negation(EFormula::conjunction(EFormula::negation(a), EFormula::negation(b)));
}

Formula iff(const Formula& a, const Formula& b) { return Formula::conjunction(implies(a, b), implies(b, a)); }

EFormula iff(const EFormula& a, const EFormula& b) { return EFormula::conjunction(implies(a, b), implies(b, a)); }

Formula prob_leq(const Threshold& s, const EFormula& a) { return Formula::prob_geq(one_minus(s), EFormula::negation(a)); }

Formula prob_lt(const Threshold& s, const EFormula& a) { return Formula::negation(Formula::prob_geq(s, a)); }

Formula prob_gt(const Threshold& s, const EFormula& a) { return Formula::negation(prob_leq(s, a)); }

Formula prob_eq(const Threshold& s, const EFormula& a) {
  return Formula::conjunction(prob_leq(s, a), Formula::prob_geq(s, a));
}

namespace {

void walk(const Formula& f, std::set<Formula>& out) {
  if (!out.insert(f).second) return;
  switch (f.kind()) {
    case Formula::Kind::Not: walk(f.arg(), out); break;
    case Formula::Kind::And:
      walk(f.lhs(), out);
      walk(f.rhs(), out);
      break;
    case Formula::Kind::Box:
    case Formula::Kind::Just:
    case Formula::Kind::ProbGeq:
    case Formula::Kind::ProbApprox: walk(f.body(), out); break;
    case Formula::Kind::Atom: break;
  }
}

}  // namespace

std::set<Formula> subformulas(const Formula& f) {
  std::set<Formula> out;
  walk(f, out);
  return out;
}

std::set<EFormula> epistemic_subformulas(const Formula& f) {
  std::set<EFormula> out;
  for (const auto& g : subformulas(f))
    if (auto e = g.epistemic()) out.insert(*e);
  return out;
}

std::set<Term> terms_of(const Formula& f) {
  std::set<Term> out;
  for (const auto& g : subformulas(f))
    if (g.kind() == Formula::Kind::Just) collect_subterms(g.term(), out);
  return out;
}

std::set<std::string> atoms_of(const Formula& f) {
  std::set<std::string> out;
  for (const auto& g : subformulas(f))
    if (g.kind() == Formula::Kind::Atom) out.insert(g.name());
  return out;
}

}  // namespace ipj
