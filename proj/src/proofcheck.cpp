#include "ipj/proofcheck.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "ipj/error.hpp"
#include "ipj/syntax.hpp"

namespace ipj {

namespace {

using K = Formula::Kind;

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

[[noreturn]] void bad(const std::string& msg, std::size_t line) {
  throw SyntaxError(ErrorKind::Syntax, msg, line, 1);
}

std::size_t to_index(const std::string& s, std::size_t line) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) bad("expected a line index, got '" + s + "'", line);
  return std::stoull(s);
}

// "P]" / "[P]" style agent suffix; returns the text before the bracket.
std::pair<std::string, Agent> with_agent(const std::string& tok, std::size_t line) {
  auto open = tok.find('[');
  if (open == std::string::npos || tok.size() != open + 3 || tok.back() != ']') bad("expected name[P] or name[V]", line);
  char a = tok[open + 1];
  if (a != 'P' && a != 'V') bad("unknown agent", line);
  return {tok.substr(0, open), a == 'P' ? Agent::Prover : Agent::Verifier};
}

std::string template_arg(const std::string& tok, std::size_t line) {
  const std::string key = "template=";
  if (tok.rfind(key, 0) != 0 || tok.size() == key.size()) bad("expected template=<file>", line);
  return tok.substr(key.size());
}

Justification parse_just(const std::string& text, std::size_t line, const InteractionSpec& spec, bool zk,
                         const TemplateLoader& loader, Parameter parameter) {
  auto w = words(text);
  if (w.empty()) bad("missing justification", line);
  Justification j;
  const std::string& op = w[0];
  auto arity = [&](std::size_t n) {
    if (w.size() != n + 1) bad("'" + op + "' takes " + std::to_string(n) + " argument(s)", line);
  };
  if (op == "ax") {
    if (w.size() < 2) bad("ax needs a schema name", line);
    j.kind = Justification::Kind::Axiom;
    std::string name = w[1];
    if (name.size() > 2 && name.front() == '(' && name.back() == ')') name = name.substr(1, name.size() - 2);
    auto id = schema_from_name(name);
    if (!id) bad("unknown schema '" + w[1] + "'", line);
    j.schema = *id;
    for (std::size_t i = 2; i < w.size(); ++i) {
      std::string kv;
      for (char c : w[i])
        if (c != '[' && c != ']' && c != ',') kv += c;
      if (kv.empty()) continue;
      if (kv.size() < 3 || kv[1] != '=') bad("side data must be n=, k= or m=", line);
      std::uint64_t v = to_index(kv.substr(2), line);
      if (kv[0] == 'n') j.side.n = v;
      else if (kv[0] == 'k') j.side.k = v;
      else if (kv[0] == 'm') j.side.m = v;
      else bad("side data must be n=, k= or m=", line);
    }
  } else if (op == "mp") {
    arity(2);
    j.kind = Justification::Kind::ModusPonens;
    j.i = to_index(w[1], line);
    j.j = to_index(w[2], line);
  } else if (op.rfind("nec", 0) == 0) {
    arity(1);
    j.kind = Justification::Kind::BoxNec;
    auto [head, agent] = with_agent(op, line);
    if (head != "nec") bad("unknown justification '" + op + "'", line);
    j.agent = agent;
    j.i = to_index(w[1], line);
  } else if (op == "axnec") {
    if (w.size() < 2) bad("axnec needs at least one constant", line);
    j.kind = Justification::Kind::AxiomNec;
    for (std::size_t i = 1; i < w.size(); ++i) {
      auto [name, agent] = with_agent(w[i], line);
      if (name.rfind("c:", 0) == 0) name = name.substr(2);
      if (name.empty()) bad("empty constant name", line);
      j.chain.emplace_back(name, agent);
    }
  } else if (op == "pnec" || op == "pnorm") {
    arity(1);
    j.kind = op == "pnec" ? Justification::Kind::ProbNec : Justification::Kind::ApproxNormal;
    j.i = to_index(w[1], line);
  } else if (op == "param-approx" || op == "param-arch") {
    if (parameter != Parameter::None)
      throw SyntaxError(ErrorKind::Template, "parametric rules cannot be nested in a template", line, 1);
    Parameter p = Parameter::Sigma;
    if (op == "param-approx") {
      arity(2);
      j.kind = Justification::Kind::ApproxIntro;
      try {
        j.r = parse_rational(w[1]);
      } catch (const Error& e) {
        bad(e.what(), line);
      }
      j.template_path = template_arg(w[2], line);
      p = Parameter::Nu;
    } else {
      arity(1);
      j.kind = Justification::Kind::ArchimedeanRule;
      j.template_path = template_arg(w[1], line);
    }
    if (!loader) throw Error(ErrorKind::Config, "no template loader for " + j.template_path);
    j.templ = std::make_shared<const Derivation>(parse_derivation(loader(j.template_path), spec, zk, loader, p));
  } else {
    bad("unknown justification '" + op + "'", line);
  }
  return j;
}

struct Failure {
  std::string reason;
  bool undecidable = false;
};

std::optional<std::pair<Formula, Formula>> split_implies(const Formula& f) {
  if (f.kind() != K::Not || f.arg().kind() != K::And || f.arg().rhs().kind() != K::Not) return std::nullopt;
  return std::make_pair(f.arg().lhs(), f.arg().rhs().arg());
}

class Checker {
 public:
  Checker(const Derivation& d, const ParamContext& params) : d_(d), ctx_{&d.spec, d.zk, params} {}

  ProofReport run() {
    ProofReport rep;
    for (std::size_t p = 0; p < d_.lines.size(); ++p) {
      if (!pos_.emplace(d_.lines[p].index, p).second)
        throw Error(ErrorKind::Structure, "duplicate line index " + std::to_string(d_.lines[p].index));
    }
    for (std::size_t p = 0; p < d_.lines.size(); ++p) {
      const ProofLine& line = d_.lines[p];
      auto fail = check(line, p);
      if (fail) {
        rep.valid = false;
        rep.failed_index = line.index;
        rep.reason = fail->reason;
        rep.undecidable = fail->undecidable;
        rep.log.push_back(std::to_string(line.index) + ". FAIL " + fail->reason);
        return rep;
      }
      rep.log.push_back(std::to_string(line.index) + ". ok " + to_string(line.just));
    }
    if (d_.lines.empty()) {
      rep.reason = "empty derivation";
      return rep;
    }
    rep.valid = true;
    return rep;
  }

 private:
  const Formula& cite(std::size_t index, std::size_t here) const {
    auto it = pos_.find(index);
    if (it == pos_.end() || it->second >= here)
      throw Error(ErrorKind::Structure, "line " + std::to_string(d_.lines[here].index) + " cites line " +
                                            std::to_string(index) + ", which does not precede it");
    return d_.lines[it->second].formula;
  }

  std::optional<Failure> check(const ProofLine& line, std::size_t here) const {
    const Formula& f = line.formula;
    const Justification& j = line.just;
    switch (j.kind) {
      case Justification::Kind::Axiom: {
        if ((j.schema == SchemaId::ZK1 || j.schema == SchemaId::ZK2) && !d_.zk)
          return Failure{"zero-knowledge axioms are disabled"};
        SchemaMatch m = match_schema(j.schema, f, ctx_, j.side);
        if (!m.bindings) return Failure{"not an instance of (" + std::string(schema_name(j.schema)) + "): " + m.note, m.undecidable};
        return std::nullopt;
      }
      case Justification::Kind::ModusPonens: {
        const Formula& a = cite(j.i, here);
        const Formula& b = cite(j.j, here);
        if (b == implies(a, f) || a == implies(b, f)) return std::nullopt;
        return Failure{"modus ponens: neither cited line is an implication from the other to this line"};
      }
      case Justification::Kind::BoxNec: {
        const Formula& a = cite(j.i, here);
        if (!a.is_epistemic()) return Failure{"necessitation needs an epistemic formula"};
        if (f == EFormula::box(j.agent, a.as_epistemic())) return std::nullopt;
        return Failure{"line is not box of the cited line"};
      }
      case Justification::Kind::AxiomNec: {
        Formula cur = f;
        for (const auto& [name, agent] : j.chain) {
          if (cur.kind() != K::Just || cur.agent() != agent || cur.term() != Term::constant(name))
            return Failure{"line is not " + name + ":[" + agent_letter(agent) + "] ..."};
          cur = cur.body();
        }
        if (d_.constants) {
          for (const auto& [name, agent] : j.chain)
            if (!d_.constants(name, agent, cur)) return Failure{"constant " + name + " is not admitted by the constant specification"};
        }
        std::vector<std::string> notes;
        if (!match_axiom(cur, ctx_, &notes)) return Failure{"core formula is not an axiom"};
        return std::nullopt;
      }
      case Justification::Kind::ProbNec: {
        const Formula& a = cite(j.i, here);
        if (!a.is_epistemic()) return Failure{"probabilistic necessitation needs an epistemic formula"};
        if (f == Formula::prob_geq(Threshold(1), a.as_epistemic())) return std::nullopt;
        return Failure{"line is not Pr>= 1 of the cited line"};
      }
      case Justification::Kind::ApproxNormal: {
        const Formula& a = cite(j.i, here);
        auto parts = split_implies(a);
        if (!a.is_epistemic() || !parts) return Failure{"pnorm needs an epistemic implication"};
        Formula want = implies(Formula::prob_approx(Rational(1), parts->first.as_epistemic()),
                               Formula::prob_approx(Rational(1), parts->second.as_epistemic()));
        if (f == want) return std::nullopt;
        return Failure{"line is not Pr~ 1 A -> Pr~ 1 B for the cited A -> B"};
      }
      case Justification::Kind::ApproxIntro:
      case Justification::Kind::ArchimedeanRule: {
        if (d_.parameter != Parameter::None) return Failure{"parametric rules cannot be nested in a template"};
        ProofReport sub = check_parametric_step(*j.templ, f, j.kind, j.r);
        if (!sub.valid) return Failure{"template " + j.template_path + ": " + sub.reason, sub.undecidable};
        return std::nullopt;
      }
    }
    return Failure{"unknown justification"};
  }

  const Derivation& d_;
  AxiomContext ctx_;
  std::map<std::size_t, std::size_t> pos_;
};

ProofReport failed(std::string reason, bool undecidable = false) {
  ProofReport r;
  r.reason = std::move(reason);
  r.undecidable = undecidable;
  return r;
}

// Every parametric threshold must lie in [0,1] for all admissible values.
std::optional<Failure> check_ranges(const Derivation& t, const ParamContext& ctx) {
  for (const auto& line : t.lines) {
    for (const Formula& g : subformulas(line.formula)) {
      if (g.kind() != K::ProbGeq || g.threshold().is_constant()) continue;
      const Threshold& th = g.threshold();
      for (Verdict v : {symbolic_le(Threshold(0), th, ctx), symbolic_le(th, Threshold(1), ctx)}) {
        if (v == Verdict::True) continue;
        return Failure{"line " + std::to_string(line.index) + ": threshold " + to_string(th) +
                           " is not within [0,1] for every parameter value",
                       v == Verdict::Undecidable};
      }
    }
  }
  return std::nullopt;
}

}  // namespace

Derivation parse_derivation(std::string_view text, const InteractionSpec& spec, bool zk, const TemplateLoader& loader,
                            Parameter parameter) {
  Derivation d;
  d.spec = spec;
  d.zk = zk;
  d.parameter = parameter;
  std::istringstream in{std::string(text)};
  std::size_t line_no = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    auto dot = line.find('.');
    if (dot == std::string::npos) bad("expected 'n. formula ; justification'", line_no);
    std::size_t index = to_index(trim(line.substr(0, dot)), line_no);
    auto semi = line.rfind(';');
    if (semi == std::string::npos || semi < dot) bad("missing ';' before the justification", line_no);
    ParseOptions opts;
    opts.parameter = parameter;
    opts.line_offset = line_no - 1;
    Formula f = parse_formula(line.substr(dot + 1, semi - dot - 1), opts);
    Justification j = parse_just(line.substr(semi + 1), line_no, spec, zk, loader, parameter);
    d.lines.push_back(ProofLine{index, f, std::move(j), line_no});
  }
  return d;
}

TemplateLoader file_loader(std::string base_dir) {
  return [base = std::move(base_dir)](const std::string& path) {
    std::filesystem::path p(path);
    if (p.is_relative()) p = std::filesystem::path(base) / p;
    std::ifstream in(p);
    if (!in) throw Error(ErrorKind::Config, "cannot read template " + p.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
}

ProofReport check_derivation(const Derivation& d, const ParamContext& params) {
  return Checker(d, params).run();
}

std::uint64_t approx_nu_min(const Rational& r) {
  if (r >= 1) return 1;
  Rational inv = Rational(1) / (Rational(1) - r);
  mpz_class c;
  mpz_cdiv_q(c.get_mpz_t(), inv.get_num_mpz_t(), inv.get_den_mpz_t());
  if (c < 1) c = 1;
  return c.get_ui();
}

ProofReport check_parametric_step(const Derivation& templ, const Formula& conclusion, Justification::Kind kind,
                                  const Rational& r) {
  auto parts = split_implies(conclusion);
  if (!parts) return failed("conclusion is not an implication B -> ...");
  const Formula& B = parts->first;
  ParamContext ctx;

  if (kind == Justification::Kind::ApproxIntro) {
    if (templ.parameter != Parameter::Nu) return failed("rule needs a nu-template");
    const Formula& rhs = parts->second;
    if (rhs.kind() != K::ProbApprox || rhs.approx_value() != r) return failed("conclusion is not B -> Pr~ " + to_string(r) + " A");
    if (r < 0 || r > 1) return failed("r must lie in [0,1]");
    EFormula A = rhs.body();
    ctx.param = Parameter::Nu;
    ctx.nu_min = approx_nu_min(r);
    if (auto f = check_ranges(templ, ctx)) return failed(f->reason, f->undecidable);
    ProofReport rep = check_derivation(templ, ctx);
    if (!rep.valid) return failed("line " + std::to_string(*rep.failed_index) + ": " + rep.reason, rep.undecidable);
    Threshold lower_need = Threshold(QEps(r)) - Threshold::nu_term(Rational(1), 1);
    Threshold upper_need = Threshold(QEps(r)) + Threshold::nu_term(Rational(1), 1);
    bool lower = false;
    bool upper = false;
    bool undecidable = false;
    for (const auto& line : templ.lines) {
      auto lp = split_implies(line.formula);
      if (!lp || lp->first != B || lp->second.kind() != K::ProbGeq) continue;
      const Formula& p = lp->second;
      if (p.body() == A) {
        Verdict v = symbolic_le(lower_need, p.threshold(), ctx);
        lower = lower || v == Verdict::True;
        undecidable = undecidable || v == Verdict::Undecidable;
      } else if (p.body() == EFormula::negation(A)) {
        Verdict v = symbolic_le(one_minus(p.threshold()), upper_need, ctx);
        upper = upper || v == Verdict::True;
        undecidable = undecidable || v == Verdict::Undecidable;
      }
    }
    if (!lower) return failed("missing premise shape B -> Pr>= r + -1/v A", undecidable);
    if (!upper) return failed("missing premise shape B -> Pr<= r + 1/v A", undecidable);
    ProofReport ok;
    ok.valid = true;
    ok.log = std::move(rep.log);
    return ok;
  }

  if (templ.parameter != Parameter::Sigma) return failed("rule needs a sigma-template");
  if (!is_tautology(Formula::negation(parts->second))) return failed("conclusion is not B -> contradiction");
  ctx.param = Parameter::Sigma;
  if (auto f = check_ranges(templ, ctx)) return failed(f->reason, f->undecidable);
  ProofReport rep = check_derivation(templ, ctx);
  if (!rep.valid) return failed("line " + std::to_string(*rep.failed_index) + ": " + rep.reason, rep.undecidable);
  Threshold sigma = Threshold::sigma_term(Rational(1));
  for (const auto& line : templ.lines) {
    auto lp = split_implies(line.formula);
    if (!lp || lp->first != B) continue;
    const Formula& x = lp->second;
    if (x.kind() != K::Not || x.arg().kind() != K::And || x.arg().rhs().kind() != K::ProbGeq) continue;
    EFormula A = x.arg().rhs().body();
    if (x == Formula::negation(prob_eq(sigma, A))) {
      ProofReport ok;
      ok.valid = true;
      ok.log = std::move(rep.log);
      return ok;
    }
  }
  return failed("missing premise shape B -> ~Pr= sigma A");
}

Formula map_thresholds(const Formula& f, const std::function<Threshold(const Threshold&)>& fn) {
  switch (f.kind()) {
    case K::Not: return Formula::negation(map_thresholds(f.arg(), fn));
    case K::And: return Formula::conjunction(map_thresholds(f.lhs(), fn), map_thresholds(f.rhs(), fn));
    case K::ProbGeq: return Formula::prob_geq(fn(f.threshold()), f.body());
    default: return f;
  }
}

Derivation instantiate_template(const Derivation& templ, std::uint64_t nu) {
  Derivation d = templ;
  d.parameter = Parameter::None;
  for (auto& line : d.lines)
    line.formula = map_thresholds(line.formula, [nu](const Threshold& t) { return t.substitute_nu(nu); });
  return d;
}

std::string to_string(const Justification& j) {
  switch (j.kind) {
    case Justification::Kind::Axiom: {
      std::string s = "ax " + std::string(schema_name(j.schema));
      if (j.side.n) s += " n=" + std::to_string(*j.side.n);
      if (j.side.k) s += " k=" + std::to_string(*j.side.k);
      if (j.side.m) s += " m=" + std::to_string(*j.side.m);
      return s;
    }
    case Justification::Kind::ModusPonens: return "mp " + std::to_string(j.i) + " " + std::to_string(j.j);
    case Justification::Kind::BoxNec: return std::string("nec[") + agent_letter(j.agent) + "] " + std::to_string(j.i);
    case Justification::Kind::AxiomNec: {
      std::string s = "axnec";
      for (const auto& [name, agent] : j.chain) s += " " + name + "[" + agent_letter(agent) + "]";
      return s;
    }
    case Justification::Kind::ProbNec: return "pnec " + std::to_string(j.i);
    case Justification::Kind::ApproxNormal: return "pnorm " + std::to_string(j.i);
    case Justification::Kind::ApproxIntro: return "param-approx " + to_string(j.r) + " template=" + j.template_path;
    case Justification::Kind::ArchimedeanRule: return "param-arch template=" + j.template_path;
  }
  return "?";
}

}  // namespace ipj
