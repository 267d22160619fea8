#include <gtest/gtest.h>

#include "ipj/error.hpp"
#include "ipj/syntax.hpp"
#include "random_ast.hpp"

using namespace ipj;

namespace {

EFormula atom(const char* n) { return EFormula::atom(n); }
Threshold th(long n, long d) { return Threshold(QEps(Rational(n, d))); }

ErrorKind error_of(const std::string& text, ParseOptions opts = {}) {
  try {
    parse_formula(text, opts);
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error for " << text;
  return ErrorKind::Structure;
}

}  // namespace

TEST(Parse, ProbLeqDesugars) {
  EXPECT_EQ(parse_formula("Pr<= 1/2 (p)"), Formula::prob_geq(th(1, 2), EFormula::negation(atom("p"))));
}

TEST(Parse, ProtocolJustification) {
  Formula f = parse_formula("f[w](t) :[V] box[P] p");
  EFormula want = EFormula::just(Term::proto(Complexity::omega(), Term::variable("t")), Agent::Verifier,
                                 EFormula::box(Agent::Prover, atom("p")));
  EXPECT_EQ(f, want);
}

TEST(Parse, ProbEqDesugars) {
  Formula want = Formula::conjunction(Formula::prob_geq(th(2, 3), EFormula::negation(atom("p"))),
                                      Formula::prob_geq(th(1, 3), atom("p")));
  EXPECT_EQ(parse_formula("Pr= 1/3 (p)"), want);
}

TEST(Parse, Precedence) {
  EXPECT_EQ(parse_formula("~p & q"), EFormula::conjunction(EFormula::negation(atom("p")), atom("q")));
  EXPECT_EQ(parse_formula("p & q | r"), disjunction(EFormula::conjunction(atom("p"), atom("q")), atom("r")));
  EXPECT_EQ(parse_formula("p | q -> r"), implies(disjunction(atom("p"), atom("q")), atom("r")));
  EXPECT_EQ(parse_formula("p -> q -> r"), implies(atom("p"), implies(atom("q"), atom("r"))));
  Term t = parse_term("!x * y + z");
  EXPECT_EQ(t, Term::sum(Term::app(Term::bang(Term::variable("x")), Term::variable("y")), Term::variable("z")));
}

TEST(Parse, Constants) {
  EXPECT_EQ(parse_term("c:k * x"), Term::app(Term::constant("k"), Term::variable("x")));
  EXPECT_NE(parse_term("c:k"), parse_term("k"));
}

TEST(Parse, Errors) {
  EXPECT_EQ(error_of("Pr>= 3/2 (p)"), ErrorKind::Range);
  EXPECT_EQ(error_of("Pr~ 1/2 e (p)"), ErrorKind::Range);
  EXPECT_EQ(error_of("Pr~ 3/2 (p)"), ErrorKind::Range);
  EXPECT_EQ(error_of("Pr>= 1/2 (Pr>= 1/2 (p))"), ErrorKind::NestedProbability);
  EXPECT_EQ(error_of("box[P] Pr>= 1 (p)"), ErrorKind::NestedProbability);
  EXPECT_EQ(error_of("p &"), ErrorKind::Syntax);
  EXPECT_EQ(error_of("Pr>= 1 + -1/v (p)"), ErrorKind::Template);
  ParseOptions nu;
  nu.parameter = Parameter::Nu;
  EXPECT_EQ(error_of("v -> Pr>= 1 (p)", nu), ErrorKind::Template);
  EXPECT_NO_THROW(parse_formula("q -> Pr>= 1 + -1/v (p)", nu));
}

TEST(Parse, ErrorPosition) {
  try {
    parse_formula("p &\n  & q");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 2U);
    EXPECT_EQ(e.column(), 3U);
  }
}

TEST(Print, Examples) {
  Formula f = parse_formula("p & ~q");
  EXPECT_EQ(parse_formula(to_string(f)), f);
  EFormula alpha = atom("a");
  Formula g = Formula::prob_approx(
      Rational(1), EFormula::just(Term::proto(Complexity::omega(), Term::variable("t")), Agent::Verifier,
                                  EFormula::box(Agent::Prover, alpha)));
  EXPECT_EQ(to_string(g), "Pr~ 1 (f[w](t) :[V] box[P] a)");
}

TEST(Closure, Examples) {
  Formula f = EFormula::conjunction(atom("p"), EFormula::negation(atom("p")));
  std::set<Formula> want{f, atom("p"), EFormula::negation(atom("p"))};
  EXPECT_EQ(subformulas(f), want);
  Term s = Term::variable("s"), t = Term::variable("t");
  std::set<Term> terms{Term::app(s, t), s, t};
  EXPECT_EQ(terms_of(EFormula::just(Term::app(s, t), Agent::Prover, atom("p"))), terms);
  EXPECT_TRUE(terms_of(parse_formula("Pr>= 1 (p)")).empty());
}

TEST(Desugar, Laws) {
  testgen::AstGen gen(5);
  for (int i = 0; i < 300; ++i) {
    EFormula a = gen.eformula(3);
    Threshold s(gen.unit_value());
    EXPECT_EQ(prob_lt(s, a), Formula::negation(Formula::prob_geq(s, a)));
    EXPECT_EQ(prob_gt(s, a), Formula::negation(prob_leq(s, a)));
    EXPECT_EQ(prob_eq(s, a), Formula::conjunction(prob_leq(s, a), Formula::prob_geq(s, a)));
    EXPECT_EQ(prob_leq(s, a), Formula::prob_geq(one_minus(s), EFormula::negation(a)));
  }
}

TEST(RoundTrip, RandomAsts) {
  testgen::AstGen gen(3);
  for (int i = 0; i < 2000; ++i) {
    Formula f = gen.formula(1 + i % 8);
    std::string text = to_string(f);
    EXPECT_EQ(parse_formula(text), f) << text;
    Term t = gen.term(1 + i % 6);
    EXPECT_EQ(parse_term(to_string(t)), t) << to_string(t);
  }
}

TEST(Types, NestingUnrepresentable) {
  Formula p = Formula::prob_geq(Threshold(1), atom("p"));
  EXPECT_FALSE(p.is_epistemic());
  EXPECT_THROW(p.as_epistemic(), Error);
  EXPECT_TRUE(Formula(atom("p")).is_epistemic());
}
