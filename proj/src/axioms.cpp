#include "ipj/axioms.hpp"

#include <array>
#include <map>
#include <stdexcept>

#include <gmpxx.h>

#include "ipj/error.hpp"

namespace ipj {

namespace {

using K = Formula::Kind;

constexpr std::array<SchemaId, 24> kAll = {
    SchemaId::P,   SchemaId::K,   SchemaId::T,   SchemaId::Four,  SchemaId::J,      SchemaId::JPlus,
    SchemaId::JT,  SchemaId::J4,  SchemaId::JYB, SchemaId::P1,    SchemaId::P2,     SchemaId::P3,
    SchemaId::P4,  SchemaId::P5,  SchemaId::P6,  SchemaId::PA1,   SchemaId::PA2,    SchemaId::M,
    SchemaId::C,   SchemaId::S,   SchemaId::COmega, SchemaId::SOmega, SchemaId::ZK1, SchemaId::ZK2,
};

constexpr std::array<std::string_view, 24> kNames = {
    "p", "k", "t", "4", "j", "j+", "jt", "j4", "jyb", "p1", "p2", "p3",
    "p4", "p5", "p6", "pa1", "pa2", "m", "c", "s", "cw", "sw", "zk1", "zk2",
};

struct NoMatch {
  std::string note;
  bool undecidable = false;
};

void need(bool cond, const char* note) {
  if (!cond) throw NoMatch{note};
}

void decide(Verdict v, const std::string& what) {
  if (v == Verdict::True) return;
  if (v == Verdict::Undecidable) throw NoMatch{what + " is undecidable", true};
  throw NoMatch{what + " fails"};
}

std::pair<Formula, Formula> imp(const Formula& f) {
  need(f.kind() == K::Not && f.arg().kind() == K::And && f.arg().rhs().kind() == K::Not, "not an implication");
  return {f.arg().lhs(), f.arg().rhs().arg()};
}

EFormula ep(const Formula& f) {
  auto e = f.epistemic();
  need(e.has_value(), "metavariable needs an epistemic formula");
  return *e;
}

void kind(const Formula& f, K k, const char* note) { need(f.kind() == k, note); }

Complexity proto_of(const Term& t) {
  need(t.kind() == Term::Kind::Proto, "expected a protocol term f[n](t)");
  return t.complexity();
}

bool rational_threshold(const Threshold& t) { return sgn(t.sigma_coeff()) == 0 && t.base().is_rational(); }

// For 1/n^k = d, fix k and the witness m for alpha in I(m,k), m < n.
void solve_interaction(Bindings& b, const QEps& d, std::uint64_t n, const EFormula& alpha, const AxiomContext& ctx,
                       const SideData& side) {
  need(ctx.spec != nullptr, "no interaction specification");
  need(n >= 1, "n must exceed some m >= 0");
  if (side.n) need(*side.n == n, "n= disagrees with the protocol term");
  need(d.is_rational(), "bound is not 1/n^k");
  Rational q = d.as_rational();
  std::optional<std::uint64_t> k;
  if (n == 1) {
    need(q == 1, "bound is not 1/n^k");
    if (side.k) {
      k = side.k;
    } else {
      for (std::uint64_t kk = 0; kk <= 64 && !k; ++kk)
        if (ctx.spec->member(alpha, 0, kk)) k = kk;
    }
    need(k.has_value(), "no k with alpha in I(0,k)");
  } else {
    need(q.get_num() == 1 && q.get_den() >= 1, "bound is not 1/n^k");
    mpz_class p = 1;
    mpz_class nn(std::to_string(n));
    std::uint64_t kk = 0;
    while (p < q.get_den()) {
      p *= nn;
      ++kk;
    }
    need(p == q.get_den(), "bound is not 1/n^k");
    k = kk;
    if (side.k) need(*side.k == kk, "k= disagrees with the bound");
  }
  std::uint64_t m = 0;
  if (side.m) {
    need(*side.m < n, "m= must be below n");
    need(ctx.spec->member(alpha, *side.m, *k), "alpha is not in I(m,k)");
    m = *side.m;
  } else {
    need(ctx.spec->member(alpha, n - 1, *k), "alpha is not in I(m,k) for any m < n");
    m = *ctx.spec->threshold(alpha, *k);
  }
  b.n = n;
  b.k = *k;
  b.m = m;
}

Bindings extract(SchemaId id, const Formula& f, const AxiomContext& ctx, const SideData& side) {
  Bindings b;
  const ParamContext& pc = ctx.params;
  switch (id) {
    case SchemaId::P:
      need(is_tautology(f), "not a propositional tautology");
      b.whole = f;
      return b;
    case SchemaId::K: {
      auto [l, r] = imp(f);
      kind(l, K::Box, "antecedent is not box[a](A -> B)");
      auto [A, B] = imp(l.body());
      b.agent = l.agent();
      b.A = ep(A);
      b.B = ep(B);
      return b;
    }
    case SchemaId::T:
    case SchemaId::Four: {
      auto [l, r] = imp(f);
      kind(l, K::Box, "antecedent is not box[a] A");
      b.agent = l.agent();
      b.A = l.body();
      return b;
    }
    case SchemaId::J: {
      auto [l, r] = imp(f);
      kind(l, K::Just, "antecedent is not s:[a](A -> B)");
      auto [A, B] = imp(l.body());
      auto [rl, rr] = imp(r);
      kind(rl, K::Just, "expected t:[a] A");
      b.agent = l.agent();
      b.s = l.term();
      b.t = rl.term();
      b.A = ep(A);
      b.B = ep(B);
      return b;
    }
    case SchemaId::JPlus: {
      auto [l, r] = imp(f);
      kind(r, K::Just, "consequent is not (s+t):[a] A");
      need(r.term().kind() == Term::Kind::Sum, "consequent term is not a sum");
      b.agent = r.agent();
      b.s = r.term().left();
      b.t = r.term().right();
      b.A = r.body();
      return b;
    }
    case SchemaId::JT:
    case SchemaId::J4:
    case SchemaId::JYB: {
      auto [l, r] = imp(f);
      kind(l, K::Just, "antecedent is not t:[a] A");
      b.agent = l.agent();
      b.t = l.term();
      b.A = l.body();
      return b;
    }
    case SchemaId::P1:
      kind(f, K::ProbGeq, "not Pr>= 0 A");
      b.A = f.body();
      return b;
    case SchemaId::P2: {
      auto [l, r] = imp(f);
      kind(l, K::ProbGeq, "antecedent is not Pr<= s A");
      kind(l.body(), K::Not, "antecedent is not Pr<= s A");
      kind(r, K::Not, "consequent is not Pr< t A");
      kind(r.arg(), K::ProbGeq, "consequent is not Pr< t A");
      b.A = l.body().arg();
      b.sv = one_minus(l.threshold());
      b.tv = r.arg().threshold();
      decide(symbolic_lt(*b.sv, *b.tv, pc), "s < t");
      return b;
    }
    case SchemaId::P3: {
      auto [l, r] = imp(f);
      kind(l, K::Not, "antecedent is not Pr< s A");
      kind(l.arg(), K::ProbGeq, "antecedent is not Pr< s A");
      b.A = l.arg().body();
      b.sv = l.arg().threshold();
      return b;
    }
    case SchemaId::P4: {
      auto [l, r] = imp(f);
      kind(l, K::ProbGeq, "antecedent is not Pr>= 1 (A <-> B)");
      kind(l.body(), K::And, "antecedent is not Pr>= 1 (A <-> B)");
      auto [A, B] = imp(l.body().lhs());
      auto [rl, rr] = imp(r);
      kind(rl, K::And, "expected Pr= s A");
      kind(rl.rhs(), K::ProbGeq, "expected Pr= s A");
      b.A = ep(A);
      b.B = ep(B);
      b.sv = rl.rhs().threshold();
      return b;
    }
    case SchemaId::P5: {
      kind(f, K::And, "not a biconditional");
      auto [X, Y] = imp(f.lhs());
      kind(X, K::ProbGeq, "expected Pr<= s A");
      kind(X.body(), K::Not, "expected Pr<= s A");
      b.A = X.body().arg();
      b.sv = one_minus(X.threshold());
      return b;
    }
    case SchemaId::P6: {
      auto [l, r] = imp(f);
      kind(l, K::And, "antecedent is not a conjunction");
      kind(l.lhs(), K::And, "antecedent is not (Pr= s A & Pr= t B) & Pr>= 1 ~(A & B)");
      Formula ea = l.lhs().lhs();
      Formula eb = l.lhs().rhs();
      kind(ea, K::And, "expected Pr= s A");
      kind(ea.rhs(), K::ProbGeq, "expected Pr= s A");
      kind(eb, K::And, "expected Pr= t B");
      kind(eb.rhs(), K::ProbGeq, "expected Pr= t B");
      b.A = ea.rhs().body();
      b.sv = ea.rhs().threshold();
      b.B = eb.rhs().body();
      b.tv = eb.rhs().threshold();
      Threshold sum = *b.sv + *b.tv;
      if (symbolic_le(sum, Threshold(1), pc) == Verdict::True) b.u = sum;
      else if (symbolic_le(Threshold(1), sum, pc) == Verdict::True) b.u = Threshold(1);
      else throw NoMatch{"min(1, s+t) is undecidable", true};
      return b;
    }
    case SchemaId::PA1: {
      auto [l, r] = imp(f);
      kind(l, K::ProbApprox, "antecedent is not Pr~ r A");
      kind(r, K::ProbGeq, "consequent is not Pr>= r1 A");
      b.A = l.body();
      b.r = l.approx_value();
      b.r1 = r.threshold();
      need(rational_threshold(*b.r1), "r1 must be rational");
      decide(symbolic_le(Threshold(0), *b.r1, pc), "0 <= r1");
      decide(symbolic_lt(*b.r1, Threshold(QEps(*b.r)), pc), "r1 < r");
      return b;
    }
    case SchemaId::PA2: {
      auto [l, r] = imp(f);
      kind(l, K::ProbApprox, "antecedent is not Pr~ r A");
      kind(r, K::ProbGeq, "consequent is not Pr<= r1 A");
      b.A = l.body();
      b.r = l.approx_value();
      b.r1 = one_minus(r.threshold());
      need(rational_threshold(*b.r1), "r1 must be rational");
      decide(symbolic_lt(Threshold(QEps(*b.r)), *b.r1, pc), "r < r1");
      decide(symbolic_le(*b.r1, Threshold(1), pc), "r1 <= 1");
      return b;
    }
    case SchemaId::M: {
      auto [l, r] = imp(f);
      kind(l, K::Just, "antecedent is not f[m](t):[a] A");
      kind(r, K::Just, "consequent is not f[n](t):[a] A");
      b.from = proto_of(l.term());
      b.to = proto_of(r.term());
      b.t = l.term().inner();
      b.agent = l.agent();
      b.A = l.body();
      need(*b.from < *b.to, "complexities must satisfy m < n");
      return b;
    }
    default: break;
  }

  // interaction and zero-knowledge schemas
  need(ctx.spec != nullptr, "no interaction specification");
  bool zk = id == SchemaId::ZK1 || id == SchemaId::ZK2;
  need(!zk || ctx.zk, "zero-knowledge axioms are disabled");
  auto [l, r] = imp(f);
  bool negated = id == SchemaId::S || id == SchemaId::SOmega;
  Formula claim = negated ? (kind(l, K::Not, "antecedent is not ~t:[P] alpha"), l.arg()) : l;
  kind(claim, K::Just, "antecedent is not t:[P] alpha");
  b.t = claim.term();
  b.A = claim.body();
  bool omega = id == SchemaId::COmega || id == SchemaId::SOmega || id == SchemaId::ZK2;
  Formula inner = r.body();
  if (omega) {
    kind(r, K::ProbApprox, "consequent is not Pr~ r (...)");
  } else {
    kind(r, K::ProbGeq, "consequent is not a Pr>= / Pr<= bound");
    need(r.threshold().is_constant(), "interaction bounds cannot be parametric");
    if (id != SchemaId::C) {
      kind(inner, K::Not, "consequent is not Pr<= 1/n^k (...)");
      inner = inner.arg();
    }
  }
  kind(inner, K::Just, "expected f[n](t):[V] ...");
  Complexity n = proto_of(inner.term());
  if (omega) {
    need(n.is_omega(), "expected f[w]");
    need(ctx.spec->in_I(*b.A), "alpha is not in I");
  } else {
    need(!n.is_omega(), "expected finite complexity");
    solve_interaction(b, one_minus(r.threshold()).constant(), n.value(), *b.A, ctx, side);
  }
  return b;
}

// Boolean skeleton evaluation over opaque leaves.
struct Skeleton {
  struct Node {
    K kind;
    int a = -1;
    int b = -1;
    int leaf = -1;
  };
  std::vector<Node> nodes;
  std::map<Formula, int> leaves;

  int build(const Formula& f) {
    Node n{f.kind()};
    if (f.kind() == K::Not) {
      n.a = build(f.arg());
    } else if (f.kind() == K::And) {
      n.a = build(f.lhs());
      n.b = build(f.rhs());
    } else {
      auto [it, fresh] = leaves.emplace(f, static_cast<int>(leaves.size()));
      n.leaf = it->second;
    }
    nodes.push_back(n);
    return static_cast<int>(nodes.size()) - 1;
  }

  bool eval(std::uint32_t assignment) const {
    std::vector<char> v(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const Node& n = nodes[i];
      if (n.kind == K::Not) v[i] = !v[n.a];
      else if (n.kind == K::And) v[i] = v[n.a] && v[n.b];
      else v[i] = (assignment >> n.leaf) & 1U;
    }
    return v.back() != 0;
  }
};

}  // namespace

std::string_view schema_name(SchemaId id) { return kNames[static_cast<std::size_t>(id)]; }

std::optional<SchemaId> schema_from_name(std::string_view name) {
  if (name == "cω") return SchemaId::COmega;
  if (name == "sω") return SchemaId::SOmega;
  for (std::size_t i = 0; i < kNames.size(); ++i)
    if (kNames[i] == name) return kAll[i];
  return std::nullopt;
}

std::span<const SchemaId> all_schemas() { return kAll; }

QEps interaction_bound(std::uint64_t n, std::uint64_t k) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), n, k);
  return QEps(Rational(1) - Rational(mpz_class(1), p));
}

bool is_axiom_chain(const EFormula& alpha) {
  Formula cur = alpha;
  for (;;) {
    if (match_axiom(cur, AxiomContext{}).has_value()) return true;
    if (cur.kind() != Formula::Kind::Just || cur.term().kind() != Term::Kind::Constant) return false;
    cur = cur.body();
  }
}

bool is_tautology(const Formula& f) {
  Skeleton s;
  s.build(f);
  if (s.leaves.size() > 20) return false;
  std::uint32_t total = 1U << s.leaves.size();
  for (std::uint32_t a = 0; a < total; ++a)
    if (!s.eval(a)) return false;
  return true;
}

Formula instantiate(SchemaId id, const Bindings& b) {
  auto req = [](const auto& opt) -> const auto& {
    if (!opt) throw std::invalid_argument("missing binding");
    return *opt;
  };
  auto just = [](const Term& t, Agent a, const EFormula& x) { return EFormula::just(t, a, x); };
  auto box = [](Agent a, const EFormula& x) { return EFormula::box(a, x); };
  switch (id) {
    case SchemaId::P: return req(b.whole);
    case SchemaId::K: {
      Agent a = req(b.agent);
      const EFormula& A = req(b.A);
      const EFormula& B = req(b.B);
      return implies(box(a, implies(A, B)), implies(box(a, A), box(a, B)));
    }
    case SchemaId::T: return implies(box(req(b.agent), req(b.A)), req(b.A));
    case SchemaId::Four: {
      EFormula x = box(req(b.agent), req(b.A));
      return implies(x, box(req(b.agent), x));
    }
    case SchemaId::J: {
      Agent a = req(b.agent);
      const Term& s = req(b.s);
      const Term& t = req(b.t);
      return implies(just(s, a, implies(req(b.A), req(b.B))),
                     implies(just(t, a, req(b.A)), just(Term::app(s, t), a, req(b.B))));
    }
    case SchemaId::JPlus: {
      Agent a = req(b.agent);
      return implies(disjunction(just(req(b.s), a, req(b.A)), just(req(b.t), a, req(b.A))),
                     just(Term::sum(req(b.s), req(b.t)), a, req(b.A)));
    }
    case SchemaId::JT: return implies(just(req(b.t), req(b.agent), req(b.A)), req(b.A));
    case SchemaId::J4: {
      EFormula x = just(req(b.t), req(b.agent), req(b.A));
      return implies(x, just(Term::bang(req(b.t)), req(b.agent), x));
    }
    case SchemaId::JYB: return implies(just(req(b.t), req(b.agent), req(b.A)), box(req(b.agent), req(b.A)));
    case SchemaId::P1: return Formula::prob_geq(Threshold(0), req(b.A));
    case SchemaId::P2: return implies(prob_leq(req(b.sv), req(b.A)), prob_lt(req(b.tv), req(b.A)));
    case SchemaId::P3: return implies(prob_lt(req(b.sv), req(b.A)), prob_leq(req(b.sv), req(b.A)));
    case SchemaId::P4:
      return implies(Formula::prob_geq(Threshold(1), iff(req(b.A), req(b.B))),
                     implies(prob_eq(req(b.sv), req(b.A)), prob_eq(req(b.sv), req(b.B))));
    case SchemaId::P5:
      return iff(prob_leq(req(b.sv), req(b.A)),
                 Formula::prob_geq(one_minus(req(b.sv)), EFormula::negation(req(b.A))));
    case SchemaId::P6: {
      const EFormula& A = req(b.A);
      const EFormula& B = req(b.B);
      Threshold lo = req(b.sv) + req(b.tv);
      if (b.u) lo = *b.u;
      else if (symbolic_le(lo, Threshold(1), {}) != Verdict::True) lo = Threshold(1);
      Formula pre = Formula::conjunction(
          Formula::conjunction(prob_eq(req(b.sv), A), prob_eq(req(b.tv), B)),
          Formula::prob_geq(Threshold(1), EFormula::negation(EFormula::conjunction(A, B))));
      return implies(pre, prob_eq(lo, disjunction(A, B)));
    }
    case SchemaId::PA1:
      return implies(Formula::prob_approx(req(b.r), req(b.A)), Formula::prob_geq(req(b.r1), req(b.A)));
    case SchemaId::PA2:
      return implies(Formula::prob_approx(req(b.r), req(b.A)), prob_leq(req(b.r1), req(b.A)));
    case SchemaId::M: {
      Agent a = req(b.agent);
      return implies(just(Term::proto(req(b.from), req(b.t)), a, req(b.A)),
                     just(Term::proto(req(b.to), req(b.t)), a, req(b.A)));
    }
    case SchemaId::C:
    case SchemaId::S:
    case SchemaId::ZK1: {
      const Term& t = req(b.t);
      std::uint64_t n = req(b.n);
      EFormula claim = just(t, Agent::Prover, req(b.A));
      EFormula target = id == SchemaId::ZK1 ? claim : box(Agent::Prover, req(b.A));
      EFormula known = just(Term::proto(Complexity::finite(n), t), Agent::Verifier, target);
      QEps bound = interaction_bound(n, req(b.k));
      if (id == SchemaId::C) return implies(claim, Formula::prob_geq(Threshold(bound), known));
      Formula pre = id == SchemaId::S ? Formula(EFormula::negation(claim)) : Formula(claim);
      return implies(pre, prob_leq(Threshold(QEps(1) - bound), known));
    }
    case SchemaId::COmega:
    case SchemaId::SOmega:
    case SchemaId::ZK2: {
      const Term& t = req(b.t);
      EFormula claim = just(t, Agent::Prover, req(b.A));
      EFormula target = id == SchemaId::ZK2 ? claim : box(Agent::Prover, req(b.A));
      EFormula known = just(Term::proto(Complexity::omega(), t), Agent::Verifier, target);
      if (id == SchemaId::COmega) return implies(claim, Formula::prob_approx(Rational(1), known));
      Formula pre = id == SchemaId::SOmega ? Formula(EFormula::negation(claim)) : Formula(claim);
      return implies(pre, Formula::prob_approx(Rational(0), known));
    }
  }
  throw std::invalid_argument("unknown schema");
}

SchemaMatch match_schema(SchemaId id, const Formula& f, const AxiomContext& ctx, const SideData& side) {
  SchemaMatch out;
  try {
    Bindings b = extract(id, f, ctx, side);
    if (instantiate(id, b) != f) {
      out.note = "formula does not have the schema's shape";
      return out;
    }
    out.bindings = std::move(b);
  } catch (const NoMatch& e) {
    out.note = e.note;
    out.undecidable = e.undecidable;
  } catch (const Error& e) {
    out.note = e.what();
  }
  return out;
}

std::optional<AxiomMatch> match_axiom(const Formula& f, const AxiomContext& ctx, std::vector<std::string>* notes) {
  for (SchemaId id : kAll) {
    if ((id == SchemaId::ZK1 || id == SchemaId::ZK2) && !ctx.zk) continue;
    SchemaMatch m = match_schema(id, f, ctx);
    if (m.bindings) return AxiomMatch{id, std::move(*m.bindings)};
    if (notes != nullptr) notes->push_back(std::string(schema_name(id)) + ": " + m.note);
  }
  return std::nullopt;
}

}  // namespace ipj
