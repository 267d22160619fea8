#include <string>

#include "ipj/syntax.hpp"

namespace ipj {

namespace {

int term_prec(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Sum: return 1;
    case Term::Kind::App: return 2;
    default: return 3;
  }
}

std::string print_term(const Term& t, int min_prec) {
  std::string s;
  switch (t.kind()) {
    case Term::Kind::Constant: s = "c:" + t.name(); break;
    case Term::Kind::Variable: s = t.name(); break;
    case Term::Kind::Sum: s = print_term(t.left(), 1) + " + " + print_term(t.right(), 2); break;
    case Term::Kind::App: s = print_term(t.left(), 2) + " * " + print_term(t.right(), 3); break;
    case Term::Kind::Bang: s = "!" + print_term(t.inner(), 3); break;
    case Term::Kind::Proto: {
      Complexity c = t.complexity();
      s = "f[" + (c.is_omega() ? std::string("w") : std::to_string(c.value())) + "](" + print_term(t.inner(), 0) + ")";
      break;
    }
  }
  return term_prec(t) < min_prec ? "(" + s + ")" : s;
}

enum Prec { kImplies = 1, kOr = 2, kAnd = 3, kUnary = 4 };

std::string print_formula(const Formula& f, int min_prec) {
  std::string s;
  int prec = kUnary;
  switch (f.kind()) {
    case Formula::Kind::Atom: s = f.name(); break;
    case Formula::Kind::Not: {
      Formula g = f.arg();
      if (g.kind() == Formula::Kind::And && g.rhs().kind() == Formula::Kind::Not) {
        Formula l = g.lhs();
        Formula r = g.rhs().arg();
        if (l.kind() == Formula::Kind::Not) {
          prec = kOr;
          s = print_formula(l.arg(), kOr) + " | " + print_formula(r, kAnd);
        } else {
          prec = kImplies;
          s = print_formula(l, kOr) + " -> " + print_formula(r, kImplies);
        }
      } else {
        s = "~" + print_formula(g, kUnary);
      }
      break;
    }
    case Formula::Kind::And:
      prec = kAnd;
      s = print_formula(f.lhs(), kAnd) + " & " + print_formula(f.rhs(), kUnary);
      break;
    case Formula::Kind::Box:
      s = std::string("box[") + agent_letter(f.agent()) + "] " + print_formula(f.body(), kUnary);
      break;
    case Formula::Kind::Just:
      s = print_term(f.term(), 0) + " :[" + agent_letter(f.agent()) + "] " + print_formula(f.body(), kUnary);
      break;
    case Formula::Kind::ProbGeq:
      s = "Pr>= " + to_string(f.threshold()) + " (" + print_formula(f.body(), 0) + ")";
      break;
    case Formula::Kind::ProbApprox:
      s = "Pr~ " + to_string(f.approx_value()) + " (" + print_formula(f.body(), 0) + ")";
      break;
  }
  return prec < min_prec ? "(" + s + ")" : s;
}

}  // namespace

std::string to_string(const Term& t) { return print_term(t, 0); }

std::string to_string(const Formula& f) { return print_formula(f, 0); }

}  // namespace ipj
