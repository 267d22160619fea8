#include "ipj/generator.hpp"

#include <algorithm>
#include <numeric>

#include "ipj/error.hpp"
#include "ipj/model_io.hpp"
#include "ipj/syntax.hpp"

namespace ipj {

namespace {

constexpr const char* kAtoms[] = {"p", "q", "r"};
constexpr Agent kAgents[] = {Agent::Prover, Agent::Verifier};

class Rand {
 public:
  explicit Rand(std::mt19937_64& rng) : rng_(rng) {}

  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  bool chance(std::size_t num, std::size_t den) { return below(den) < num; }
  Agent agent() { return kAgents[below(2)]; }

  Term base(const std::set<Term>& terms) {
    auto it = terms.begin();
    std::advance(it, below(terms.size()));
    return *it;
  }

  Term term(const std::set<Term>& terms, int depth) {
    if (depth <= 0 || chance(1, 2)) return chance(1, 5) ? Term::constant("k") : base(terms);
    switch (below(4)) {
      case 0: return Term::app(term(terms, depth - 1), term(terms, depth - 1));
      case 1: return Term::sum(term(terms, depth - 1), term(terms, depth - 1));
      case 2: return Term::bang(term(terms, depth - 1));
      default: return Term::proto(complexity(), base(terms));
    }
  }

  Complexity complexity() { return chance(1, 5) ? Complexity::omega() : Complexity::finite(below(5)); }

  EFormula eformula(const std::set<Term>& terms, int depth) {
    if (depth <= 0 || chance(1, 3)) return EFormula::atom(kAtoms[below(3)]);
    switch (below(5)) {
      case 0: return EFormula::negation(eformula(terms, depth - 1));
      case 1: return EFormula::conjunction(eformula(terms, depth - 1), eformula(terms, depth - 1));
      case 2: return EFormula::box(agent(), eformula(terms, depth - 1));
      case 3: return EFormula::just(term(terms, 1), agent(), eformula(terms, depth - 1));
      default: return implies(eformula(terms, depth - 1), eformula(terms, depth - 1));
    }
  }

  Rational rational() {
    Rational r(static_cast<long>(below(7)), 6);
    r.canonicalize();
    return r;
  }

  QEps unit() {
    Rational r = rational();
    if (chance(1, 4)) {
      QEps e = QEps::epsilon_pow(1 + static_cast<int>(below(2)));
      return r == 0 ? e : QEps(r) - e;
    }
    return QEps(r);
  }

  Formula formula(const std::set<Term>& terms, int depth) {
    if (depth <= 0 || chance(1, 3)) {
      switch (below(3)) {
        case 0: return Formula::prob_geq(Threshold(unit()), eformula(terms, 2));
        case 1: return Formula::prob_approx(rational(), eformula(terms, 2));
        default: return eformula(terms, 2);
      }
    }
    switch (below(3)) {
      case 0: return Formula::negation(formula(terms, depth - 1));
      case 1: return Formula::conjunction(formula(terms, depth - 1), formula(terms, depth - 1));
      default: return implies(formula(terms, depth - 1), formula(terms, depth - 1));
    }
  }

 private:
  std::mt19937_64& rng_;
};

void close_relation(EpistemicModel& m, Agent a) {
  std::size_t n = m.size();
  for (World w = 0; w < n; ++w) m.add_edge(a, w, w);
  for (World k = 0; k < n; ++k)
    for (World i = 0; i < n; ++i)
      if (m.accessible(a, i, k))
        for (World j = 0; j < n; ++j)
          if (m.accessible(a, k, j)) m.add_edge(a, i, j);
}

// Adds the tuple at w and at every a-successor of w.
void add_upward(EpistemicModel& m, World w, Agent a, const Term& t, const EFormula& f) {
  for (World u : m.successors(a, w)) m.add_evidence(u, a, t, f);
}

ThresholdFn random_fn(Rand& r) {
  if (r.chance(1, 2)) return ThresholdFn::constant(r.below(3));
  return ThresholdFn::polynomial({r.below(2), r.below(2)});
}

}  // namespace

GeneratedModel random_model(std::mt19937_64& rng, const GeneratorOptions& opts) {
  Rand r(rng);
  GeneratedModel g;
  g.kmax = opts.kmax;
  g.terms = {Term::variable("x"), Term::variable("y")};
  EpistemicModel& m = g.quasi.model;

  std::size_t n = 1 + r.below(opts.max_worlds);
  for (std::size_t i = 0; i < n; ++i) m.add_world("w" + std::to_string(i));
  for (const char* a : kAtoms) m.declare_atom(a);
  for (World w = 0; w < n; ++w)
    for (const char* a : kAtoms)
      if (r.chance(1, 2)) m.set_true(w, a);
  for (Agent a : kAgents) {
    for (std::size_t e = r.below(n + 1); e > 0; --e) m.add_edge(a, r.below(n), r.below(n));
    close_relation(m, a);
  }

  for (std::size_t e = r.below(2 * n + 2); e > 0; --e) {
    World w = r.below(n);
    Agent a = r.agent();
    Term t = r.base(g.terms);
    EFormula f = r.eformula(g.terms, 2);
    add_upward(m, w, a, t, f);
    if (r.chance(1, 2)) {
      EFormula h = r.eformula(g.terms, 1);
      add_upward(m, w, a, r.base(g.terms), implies(f, h));
    }
  }

  // Sample space.
  std::vector<World> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  order.resize(1 + r.below(std::min(n, opts.max_sample)));
  Quasimodel& q = g.quasi;
  q.sample = order;
  q.w0 = q.sample[r.below(q.sample.size())];

  // Spec entries and the honest/dishonest split at w0.
  std::vector<InteractionSpec::Entry> entries;
  for (std::size_t e = r.below(3); e > 0; --e) {
    EFormula alpha = r.eformula(g.terms, 2);
    const auto used = terms_of(alpha);
    bool f_free = std::all_of(used.begin(), used.end(), [](const Term& t) { return t.is_protocol_free(); });
    if (!f_free || std::any_of(entries.begin(), entries.end(), [&](const auto& x) {
          return x.formula == alpha;
        }))
      continue;
    entries.push_back({alpha, random_fn(r)});
  }
  Evaluator ev(m);
  auto good_set = [&](const EFormula& alpha) {
    // worlds all of whose V-then-P successors satisfy alpha
    const auto& boxed = ev.truth_set(EFormula::box(Agent::Prover, alpha));
    std::vector<bool> good(n, false);
    for (World u = 0; u < n; ++u) {
      bool all = true;
      for (World v : m.successors(Agent::Verifier, u)) all = all && boxed[v];
      good[u] = all;
    }
    return good;
  };
  struct Pair {
    Term t;
    std::size_t entry;
    bool honest;
  };
  std::vector<Pair> pairs;
  auto standard_set = [&]() {
    std::vector<World> s;
    for (World u : q.sample) {
      bool ok = true;
      for (const Pair& p : pairs)
        if (p.honest) ok = ok && good_set(entries[p.entry].formula)[u];
      if (ok) s.push_back(u);
    }
    return s;
  };
  for (;;) {
    pairs.clear();
    for (std::size_t e = 0; e < entries.size(); ++e)
      for (const Term& t : g.terms)
        pairs.push_back({t, e, ev.holds(q.w0, EFormula::just(t, Agent::Prover, entries[e].formula))});
    if (!standard_set().empty()) break;
    entries.erase(entries.begin() + static_cast<long>(r.below(entries.size())));
  }
  std::vector<World> standard = standard_set();
  for (const auto& e : entries) g.spec.add(e.formula, e.threshold);

  // Masses: standard weights on `standard`, c * eps^j on the rest of U.
  std::vector<bool> is_standard(n, false);
  for (World u : standard) is_standard[u] = true;
  QEps infinitesimal(0);
  for (World u : q.sample) {
    if (is_standard[u]) continue;
    QEps mass = QEps(Rational(static_cast<long>(r.below(3)))) * QEps::epsilon_pow(1 + static_cast<int>(r.below(2)));
    q.mass[u] = mass;
    infinitesimal += mass;
  }
  std::vector<long> weights;
  long total = 0;
  for (std::size_t i = 0; i < standard.size(); ++i) {
    weights.push_back(1 + static_cast<long>(r.below(4)));
    total += weights.back();
  }
  for (std::size_t i = 0; i < standard.size(); ++i) {
    Rational w(weights[i], total);
    w.canonicalize();
    q.mass[standard[i]] = QEps(w) - (i == 0 ? infinitesimal : QEps(0));
  }

  // f-evidence for V: honest pairs on the whole good set, dishonest ones on
  // an upward-closed set of infinitesimal worlds, if one turns up.
  for (const Pair& p : pairs) {
    const auto& entry = entries[p.entry];
    if (p.honest) {
      std::uint64_t least = UINT64_MAX;
      for (std::uint64_t k = 1; k <= opts.kmax; ++k)
        if (auto mk = entry.threshold.at(k)) least = std::min(least, *mk);
      std::uint64_t n0 = least == UINT64_MAX ? 1 : 1 + r.below(std::min<std::uint64_t>(least, 3) + 1);
      auto good = good_set(entry.formula);
      for (World u = 0; u < n; ++u)
        if (good[u])
          m.add_evidence(u, Agent::Verifier, Term::proto(Complexity::finite(n0), p.t),
                         EFormula::box(Agent::Prover, entry.formula));
    } else if (r.chance(1, 2)) {
      World w = r.below(n);
      auto up = m.successors(Agent::Verifier, w);
      bool negligible = std::all_of(up.begin(), up.end(), [&](World u) {
        auto it = q.mass.find(u);
        return it == q.mass.end() || it->second.is_infinitesimal();
      });
      if (negligible)
        add_upward(m, w, Agent::Verifier, Term::proto(Complexity::finite(1 + r.below(4)), p.t),
                   EFormula::box(Agent::Prover, entry.formula));
    }
  }
  q.validate();
  return g;
}

std::optional<Formula> random_instance(std::mt19937_64& rng, const GeneratedModel& g, SchemaId id,
                                       SideData* side) {
  Rand r(rng);
  const auto& T = g.terms;
  Bindings b;
  b.agent = r.agent();
  b.A = r.eformula(T, 2);
  b.B = r.eformula(T, 2);
  b.s = r.term(T, 2);
  b.t = r.term(T, 2);
  switch (id) {
    case SchemaId::P: {
      Formula x = r.formula(T, 2);
      Formula y = r.formula(T, 2);
      switch (r.below(4)) {
        case 0: b.whole = implies(x, x); break;
        case 1: b.whole = disjunction(x, Formula::negation(x)); break;
        case 2: b.whole = implies(Formula::conjunction(x, y), x); break;
        default: b.whole = implies(x, implies(y, x)); break;
      }
      break;
    }
    case SchemaId::P2: {
      QEps a = r.unit(), c = r.unit();
      while (a == c) c = r.unit();
      b.sv = Threshold(min(a, c));
      b.tv = Threshold(max(a, c));
      break;
    }
    case SchemaId::P3:
    case SchemaId::P4:
    case SchemaId::P5:
      b.sv = Threshold(r.unit());
      break;
    case SchemaId::P6:
      b.sv = Threshold(r.unit());
      b.tv = Threshold(r.unit());
      break;
    case SchemaId::PA1: {
      Rational v = r.rational();
      while (v == 0) v = r.rational();
      Rational w(static_cast<long>(r.below(6)), 6);
      w.canonicalize();
      b.r = v;
      b.r1 = Threshold(QEps(Rational(w * v)));
      break;
    }
    case SchemaId::PA2: {
      Rational v = r.rational();
      while (v == 1) v = r.rational();
      Rational w(static_cast<long>(1 + r.below(6)), 6);
      w.canonicalize();
      b.r = v;
      b.r1 = Threshold(QEps(Rational(v + w * (1 - v))));
      break;
    }
    case SchemaId::M: {
      b.t = r.base(T);
      std::uint64_t lo = r.below(4);
      b.from = Complexity::finite(lo);
      b.to = r.chance(1, 4) ? Complexity::omega() : Complexity::finite(lo + 1 + r.below(3));
      break;
    }
    case SchemaId::C:
    case SchemaId::S:
    case SchemaId::ZK1:
    case SchemaId::COmega:
    case SchemaId::SOmega:
    case SchemaId::ZK2: {
      auto entries = g.spec.entries();
      bool omega = id == SchemaId::COmega || id == SchemaId::SOmega || id == SchemaId::ZK2;
      std::vector<std::pair<EFormula, std::uint64_t>> choices;  // (alpha, k)
      for (const auto& e : entries) {
        if (omega) {
          if (g.spec.in_I(e.formula)) choices.emplace_back(e.formula, 0);
          continue;
        }
        for (std::uint64_t k = 0; k <= g.kmax; ++k)
          if (e.threshold.at(k)) choices.emplace_back(e.formula, k);
      }
      if (choices.empty()) return std::nullopt;
      auto [alpha, k] = choices[r.below(choices.size())];
      b.A = alpha;
      b.t = r.base(T);
      if (!omega) {
        b.k = k;
        b.n = *g.spec.threshold(alpha, k) + 1 + r.below(4);
        if (side) {
          side->n = b.n;
          side->k = b.k;
        }
      }
      break;
    }
    default: break;
  }
  return instantiate(id, b);
}

SoundnessReport soundness_harness(std::uint64_t seed, std::size_t models, std::size_t instances_per_model,
                                  const GeneratorOptions& opts) {
  std::mt19937_64 rng(seed);
  SoundnessReport out;
  auto schemas = all_schemas();
  for (std::size_t i = 0; i < models; ++i) {
    GeneratedModel g = random_model(rng, opts);
    ++out.models;
    AxiomContext ctx;
    ctx.spec = &g.spec;
    ctx.zk = true;
    // Schemas without an instance in this model hand their turn to the next one.
    std::size_t made = 0;
    for (std::size_t j = 0; made < instances_per_model && j < instances_per_model * schemas.size(); ++j) {
      SchemaId id = schemas[j % schemas.size()];
      SideData side;
      auto f = random_instance(rng, g, id, &side);
      if (!f) continue;
      ++made;
      ++out.instances;
      auto where = [&] {
        return "model " + std::to_string(i) + " schema " + std::string(schema_name(id)) + ": " + to_string(*f);
      };
      SchemaMatch sm = match_schema(id, *f, ctx, side);
      if (!sm.bindings) {
        out.fail(where() + " rejected by the matcher (" + sm.note + ")");
        continue;
      }
      bool holds = false;
      try {
        holds = eval_formula(g.quasi, *f);
      } catch (const Error& e) {
        out.fail(where() + " raised " + e.what());
        continue;
      }
      if (!holds) out.fail(where() + " is false in\n" + write_model(g.quasi, g.terms) + to_text(g.spec));
    }
  }
  return out;
}

}  // namespace ipj
