#include <string>

#include "ipj/error.hpp"
#include "ipj/syntax.hpp"
#include "literal.hpp"
#include "syntax_detail.hpp"

namespace ipj {

namespace {

using detail::Cursor;

class Parser {
 public:
  Parser(Cursor& cur, const ParseOptions& opts) : cur_(cur), opts_(opts) {}

  Term term() {
    Term t = term_app();
    while (cur_.accept("+")) t = Term::sum(t, term_app());
    return t;
  }

  Formula formula() {
    Formula l = implication();
    while (cur_.accept("<->")) l = iff(l, implication());
    return l;
  }

  Threshold threshold() {
    Threshold t;
    Poly base;
    if (cur_.accept("(")) {
      Poly num = detail::read_poly(cur_);
      cur_.expect(")");
      cur_.expect("/");
      cur_.expect("(");
      Poly den = detail::read_poly(cur_);
      cur_.expect(")");
      QEps q = guarded([&] { return QEps::from_polys(num, den); });
      if (q.shift() < 0) cur_.fail(ErrorKind::Range, "threshold is infinite");
      t = Threshold(q);
      if (!cur_.accept("+")) return t;
    }
    do {
      cur_.skip_ws();
      if (cur_.looking_at("sigma") && !Cursor::ident_char(cur_.peek_at(5))) {
        cur_.reset(cur_.pos() + 5);
        admit(Parameter::Sigma);
        t = t + Threshold::sigma_term(Rational(1));
        continue;
      }
      Rational c = detail::read_rational(cur_);
      if (cur_.peek() == '/' && cur_.peek_at(1) == 'v' && !Cursor::ident_char(cur_.peek_at(2)) ) {
        cur_.reset(cur_.pos() + 2);
        unsigned power = 1;
        if (cur_.peek() == '^') {
          cur_.reset(cur_.pos() + 1);
          std::string k = cur_.read_int();
          if (k[0] == '-' || k == "0") cur_.fail(ErrorKind::Range, "parameter exponent must be positive");
          power = static_cast<unsigned>(std::stoul(k));
        }
        admit(Parameter::Nu);
        t = t + Threshold::nu_term(c, power);
        continue;
      }
      if (cur_.looking_at("sigma") && !Cursor::ident_char(cur_.peek_at(5))) {
        cur_.reset(cur_.pos() + 5);
        admit(Parameter::Sigma);
        t = t + Threshold::sigma_term(c);
        continue;
      }
      unsigned k = detail::read_eps_power(cur_);
      if (base.size() <= k) base.resize(k + 1, Rational(0));
      base[k] += c;
    } while (cur_.accept("+"));
    return t + Threshold(QEps::from_polys(base, {Rational(1)}));
  }

 private:
  template <typename F>
  auto guarded(F&& f) -> decltype(f()) {
    try {
      return f();
    } catch (const SyntaxError&) {
      throw;
    } catch (const Error& e) {
      cur_.fail(e.kind(), e.what());
    }
  }

  void admit(Parameter p) {
    if (opts_.parameter != p)
      cur_.fail(ErrorKind::Template, "template parameter not admitted here");
  }

  std::string name() {
    std::string id = cur_.read_ident();
    if ((opts_.parameter == Parameter::Nu && id == "v") || (opts_.parameter == Parameter::Sigma && id == "sigma"))
      cur_.fail(ErrorKind::Template, "template parameter '" + id + "' outside threshold position");
    return id;
  }

  Term term_app() {
    Term t = term_unary();
    while (cur_.accept("*")) t = Term::app(t, term_unary());
    return t;
  }

  Term term_unary() {
    if (cur_.accept("!")) return Term::bang(term_unary());
    if (cur_.accept("f[")) {
      Complexity c = Complexity::omega();
      if (!cur_.accept("w")) {
        std::string n = cur_.read_int();
        if (n[0] == '-') cur_.fail(ErrorKind::Syntax, "complexity must be a natural number");
        c = Complexity::finite(std::stoull(n));
      }
      cur_.expect("]");
      cur_.expect("(");
      Term inner = term();
      cur_.expect(")");
      return Term::proto(c, inner);
    }
    if (cur_.accept("(")) {
      Term t = term();
      cur_.expect(")");
      return t;
    }
    cur_.skip_ws();
    if (cur_.peek() == 'c' && cur_.peek_at(1) == ':' && Cursor::ident_start(cur_.peek_at(2))) {
      cur_.reset(cur_.pos() + 2);
      return Term::constant(name());
    }
    return Term::variable(name());
  }

  Agent agent() {
    cur_.skip_ws();
    Agent a = Agent::Prover;
    if (cur_.accept("P")) {
      a = Agent::Prover;
    } else if (cur_.accept("V")) {
      a = Agent::Verifier;
    } else {
      cur_.fail(ErrorKind::Syntax, "expected agent P or V");
    }
    cur_.expect("]");
    return a;
  }

  EFormula epistemic_body() {
    std::size_t at = cur_.pos();
    Formula f = unary();
    if (!f.is_epistemic()) {
      cur_.reset(at);
      cur_.skip_ws();
      cur_.fail(ErrorKind::NestedProbability, "probability operator inside a modality or probability operator");
    }
    return f.as_epistemic();
  }

  EFormula prob_body() {
    cur_.expect("(");
    std::size_t at = cur_.pos();
    Formula f = formula();
    if (!f.is_epistemic()) {
      cur_.reset(at);
      cur_.skip_ws();
      cur_.fail(ErrorKind::NestedProbability, "probability operator inside a probability operator");
    }
    cur_.expect(")");
    return f.as_epistemic();
  }

  Formula implication() {
    Formula l = disjunct();
    if (cur_.accept("->")) return implies(l, implication());
    return l;
  }

  Formula disjunct() {
    Formula l = conjunct();
    while (cur_.accept("|")) l = disjunction(l, conjunct());
    return l;
  }

  Formula conjunct() {
    Formula l = unary();
    while (cur_.accept("&")) l = Formula::conjunction(l, unary());
    return l;
  }

  Formula probability() {
    std::size_t at = cur_.pos();
    if (cur_.accept("Pr~")) {
      Rational r = detail::read_rational(cur_);
      cur_.skip_ws();
      if (cur_.peek() != '(') cur_.fail(ErrorKind::Range, "Pr~ takes a rational threshold");
      EFormula body = prob_body();
      return guarded_at(at, [&] { return Formula::prob_approx(r, body); });
    }
    static constexpr const char* kOps[] = {"Pr>=", "Pr<=", "Pr<", "Pr>", "Pr="};
    for (const char* op : kOps) {
      if (!cur_.accept(op)) continue;
      std::string o(op);
      Threshold s = threshold();
      EFormula body = prob_body();
      return guarded_at(at, [&] {
        if (o == "Pr>=") return Formula::prob_geq(s, body);
        if (o == "Pr<=") return prob_leq(s, body);
        if (o == "Pr<") return prob_lt(s, body);
        if (o == "Pr>") return prob_gt(s, body);
        return prob_eq(s, body);
      });
    }
    cur_.fail(ErrorKind::Syntax, "unknown probability operator");
  }

  template <typename F>
  Formula guarded_at(std::size_t at, F&& f) {
    try {
      return f();
    } catch (const SyntaxError&) {
      throw;
    } catch (const Error& e) {
      cur_.reset(at);
      cur_.skip_ws();
      cur_.fail(e.kind(), e.what());
    }
  }

  bool probability_next() {
    cur_.skip_ws();
    if (!cur_.looking_at("Pr")) return false;
    char c = cur_.peek_at(2);
    return c == '>' || c == '<' || c == '=' || c == '~';
  }

  Formula unary() {
    if (cur_.accept("~")) return Formula::negation(unary());
    if (cur_.accept("box[")) {
      Agent a = agent();
      return EFormula::box(a, epistemic_body());
    }
    if (probability_next()) return probability();
    std::size_t save = cur_.pos();
    try {
      Term t = term();
      if (cur_.accept(":[")) {
        Agent a = agent();
        return EFormula::just(t, a, epistemic_body());
      }
    } catch (const SyntaxError& e) {
      if (e.kind() == ErrorKind::Template) throw;
    }
    cur_.reset(save);
    if (cur_.accept("(")) {
      Formula f = formula();
      cur_.expect(")");
      return f;
    }
    cur_.skip_ws();
    if (!Cursor::ident_start(cur_.peek())) cur_.fail(ErrorKind::Syntax, "expected formula");
    return EFormula::atom(name());
  }

  Cursor& cur_;
  const ParseOptions& opts_;
};

template <typename T, typename F>
T parse_whole(std::string_view text, const ParseOptions& opts, F&& f) {
  Cursor cur(text, opts.line_offset);
  Parser p(cur, opts);
  T out = f(p);
  cur.skip_ws();
  if (!cur.at_end()) cur.fail(ErrorKind::Syntax, "unexpected input");
  return out;
}

}  // namespace

Term parse_term(std::string_view text, const ParseOptions& opts) {
  return parse_whole<Term>(text, opts, [](Parser& p) { return p.term(); });
}

Formula parse_formula(std::string_view text, const ParseOptions& opts) {
  return parse_whole<Formula>(text, opts, [](Parser& p) { return p.formula(); });
}

EFormula parse_eformula(std::string_view text, const ParseOptions& opts) {
  Formula f = parse_formula(text, opts);
  if (!f.is_epistemic()) throw Error(ErrorKind::NestedProbability, "expected an epistemic formula: " + std::string(text));
  return f.as_epistemic();
}

namespace detail {

Term read_term(Cursor& cur, const ParseOptions& opts) {
  Parser p(cur, opts);
  return p.term();
}

Formula read_formula(Cursor& cur, const ParseOptions& opts) {
  Parser p(cur, opts);
  return p.formula();
}

Threshold read_threshold(Cursor& cur, const ParseOptions& opts) {
  Parser p(cur, opts);
  return p.threshold();
}

}  // namespace detail

}  // namespace ipj
