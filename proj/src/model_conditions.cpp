#include <algorithm>
#include <functional>

#include "ipj/axioms.hpp"
#include "ipj/error.hpp"
#include "ipj/semantics.hpp"
#include "ipj/syntax.hpp"

namespace ipj {

namespace {

constexpr Agent kAgents[] = {Agent::Prover, Agent::Verifier};

std::string where(const EpistemicModel& m, World w, Agent a) {
  return m.name(w) + " [" + agent_letter(a) + "]";
}

QEps inverse_power(std::uint64_t n, std::uint64_t k) {
  Rational r(1);
  for (std::uint64_t i = 0; i < k; ++i) r /= Rational(mpz_class(std::to_string(n)));
  return QEps(r);
}

// Finite complexities at which some base tuple for f[.](t) sits.
std::set<std::uint64_t> change_points(const EpistemicModel& m, const Term& t) {
  std::set<std::uint64_t> out;
  for (const auto& e : m.evidence())
    if (e.term.kind() == Term::Kind::Proto && e.term.inner() == t && !e.term.complexity().is_omega())
      out.insert(e.term.complexity().value());
  return out;
}

// Right ends of the constant stretches of the event family inside (m, n*].
// The bound moves monotonically in n, so these are the binding points.
std::vector<std::uint64_t> probe_points(const std::set<std::uint64_t>& changes, std::uint64_t m, std::uint64_t nstar) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t c : changes)
    if (c > m + 1 && c <= nstar) out.push_back(c - 1);
  if (nstar > m) out.push_back(nstar);
  return out;
}

Term proto(std::uint64_t n, const Term& t) { return Term::proto(Complexity::finite(n), t); }

}  // namespace

Report check_evidence_closure(const EpistemicModel& m, const Universe& u, EvidenceMode mode) {
  Evaluator ev(m, u.formulas);
  auto member = [&](World w, Agent a, const Term& t, const EFormula& f) {
    return mode == EvidenceMode::Extensional ? m.has_base(w, a, t, f) : ev.evidence_member(w, a, t, f);
  };
  std::set<Term> terms;
  for (const Term& t : u.terms) collect_subterms(t, terms);
  std::set<EFormula> formulas = u.formulas;
  for (const auto& e : m.evidence()) {
    collect_subterms(e.term, terms);
    formulas.insert(e.formula);
  }

  Report r;
  for (World w = 0; w < m.size(); ++w) {
    for (Agent a : kAgents) {
      for (const Term& t : terms) {
        for (const EFormula& f : formulas) {
          auto bad = [&](const std::string& cond) {
            r.fail("condition " + cond + " at " + where(m, w, a) + ": " + to_string(f) + " missing from E(" +
                   to_string(t) + ")");
          };
          bool in = member(w, a, t, f);
          if (in) continue;
          switch (t.kind()) {
            case Term::Kind::Sum:
              if (member(w, a, t.left(), f) || member(w, a, t.right(), f)) bad("1");
              break;
            case Term::Kind::App:
              for (const EFormula& beta : formulas) {
                if (member(w, a, t.right(), beta) && member(w, a, t.left(), implies(beta, f))) {
                  bad("2");
                  break;
                }
              }
              break;
            case Term::Kind::Bang:
              if (f.kind() == Formula::Kind::Just && f.agent() == a && f.term() == t.inner() &&
                  member(w, a, t.inner(), f.body()))
                bad("3");
              break;
            case Term::Kind::Constant:
              if (is_axiom_chain(f)) bad("4");
              break;
            case Term::Kind::Proto:
              for (const Term& s : terms) {
                if (s.kind() == Term::Kind::Proto && s.inner() == t.inner() && s.complexity() < t.complexity() &&
                    member(w, a, s, f)) {
                  bad("5");
                  break;
                }
              }
              break;
            case Term::Kind::Variable: break;
          }
          if (!r.pass) return r;
        }
      }
    }
  }
  r.note("closure conditions 1-5 hold over " + std::to_string(terms.size()) + " terms and " +
         std::to_string(formulas.size()) + " formulas");
  return r;
}

Report check_evidence_persistence(const EpistemicModel& m) {
  Evaluator ev(m);
  Report r;
  for (const auto& e : m.evidence()) {
    for (World u : m.successors(e.agent, e.world)) {
      if (!ev.evidence_member(u, e.agent, e.term, e.formula)) {
        r.fail(to_string(e.formula) + " in E(" + to_string(e.term) + ") at " + where(m, e.world, e.agent) +
               " but not at successor " + m.name(u));
        return r;
      }
    }
  }
  r.note("base evidence persists along both relations");
  return r;
}

std::uint64_t stabilization_index(const EpistemicModel& m, const Term& t) {
  auto c = change_points(m, t);
  return c.empty() ? 0 : *c.rbegin();
}

Report check_model_conditions(const Quasimodel& q, const InteractionSpec& spec, const Universe& u,
                              const ConditionOptions& opts) {
  const EpistemicModel& m = q.model;
  for (const Term& t : u.terms)
    if (!t.is_protocol_free()) throw Error(ErrorKind::Universe, "universe term " + to_string(t) + " is not f-free");
  auto entries = spec.entries();
  std::set<EFormula> pool = u.formulas;
  for (const auto& e : entries) {
    for (const std::string& a : atoms_of(e.formula))
      if (m.atoms().count(a) == 0)
        throw Error(ErrorKind::Universe, "spec formula " + to_string(e.formula) + " uses atom " + a +
                                             " outside the model");
    pool.insert(e.formula);
  }

  Evaluator ev(q, pool);
  Report r;
  r.note("reduction: events for f[n](t) change only at base complexities; n > n* is checked through the "
         "standard part of the stabilized measure");

  for (const Term& t : u.terms) {
    std::set<std::uint64_t> changes = change_points(m, t);
    std::uint64_t nstar = changes.empty() ? 0 : *changes.rbegin();
    Term stable = proto(nstar + 1, t);
    Term omega = Term::proto(Complexity::omega(), t);

    for (const auto& entry : entries) {
      const EFormula& alpha = entry.formula;
      EFormula claim = EFormula::just(t, Agent::Prover, alpha);
      EFormula boxed = EFormula::box(Agent::Prover, alpha);
      bool honest = ev.holds(q.w0, claim);
      auto target = [&](const Term& s, const EFormula& body) { return EFormula::just(s, Agent::Verifier, body); };
      auto witness = [&](const std::string& cond, const std::string& n, std::uint64_t k, const QEps& mu) {
        return cond + ": t=" + to_string(t) + " alpha=" + to_string(alpha) + " n=" + n + " k=" + std::to_string(k) +
               " measure=" + to_string(mu);
      };

      for (const EFormula* body : {&boxed, &claim}) {
        bool zk_part = body == &claim;
        if (zk_part && !(opts.zk && honest)) continue;
        if (ev.event(target(omega, *body)) != ev.event(target(stable, *body))) {
          r.fail((zk_part ? std::string("zk omega event") : std::string("omega event")) + ": t=" + to_string(t) +
                 " alpha=" + to_string(alpha) + " differs from the stabilized event at n=" +
                 std::to_string(nstar + 1));
        }
      }

      for (std::uint64_t k = opts.kmin; k <= opts.kmax; ++k) {
        auto mk = spec.threshold(alpha, k);
        if (!mk) continue;
        for (std::uint64_t n : probe_points(changes, *mk, nstar)) {
          QEps mu = ev.measure_of(target(proto(n, t), boxed));
          QEps bound = inverse_power(n, k);
          if (honest && mu < QEps(1) - bound) r.fail(witness("condition 1", std::to_string(n), k, mu));
          if (!honest && mu > bound) r.fail(witness("condition 2", std::to_string(n), k, mu));
          if (opts.zk && honest) {
            QEps z = ev.measure_of(target(proto(n, t), claim));
            if (z > bound) r.fail(witness("zk condition", std::to_string(n), k, z));
          }
        }
        // Past n* the event is fixed while 1/n^k shrinks to zero.
        if (k == 0) continue;
        std::string beyond = "n>" + std::to_string(std::max(nstar, *mk));
        QEps mu = ev.measure_of(target(stable, boxed));
        if (honest && std_part(mu) != 1) r.fail(witness("condition 1 limit", beyond, k, mu));
        if (!honest && std_part(mu) != 0) r.fail(witness("condition 2 limit", beyond, k, mu));
        if (opts.zk && honest) {
          QEps z = ev.measure_of(target(stable, claim));
          if (std_part(z) != 0) r.fail(witness("zk condition limit", beyond, k, z));
        }
      }
    }
  }
  return r;
}

Report check_event_monotonicity(const Quasimodel& q, const Universe& u, const std::set<EFormula>& formulas) {
  Evaluator ev(q, formulas);
  Report r;
  for (const Term& t : u.terms) {
    std::set<std::uint64_t> points = change_points(q.model, t);
    points.insert(0);
    std::uint64_t top = *points.rbegin() + 1;
    points.insert(top);
    for (const EFormula& alpha : formulas) {
      for (Agent a : kAgents) {
        std::vector<World> prev;
        for (std::uint64_t n : points) {
          std::vector<World> cur = ev.event(EFormula::just(proto(n, t), a, alpha));
          std::sort(cur.begin(), cur.end());
          if (!std::includes(cur.begin(), cur.end(), prev.begin(), prev.end()))
            r.fail("event of f[" + std::to_string(n) + "](" + to_string(t) + ") :[" + agent_letter(a) + "] " +
                   to_string(alpha) + " shrinks");
          prev = std::move(cur);
        }
        std::vector<World> omega = ev.event(EFormula::just(Term::proto(Complexity::omega(), t), a, alpha));
        std::sort(omega.begin(), omega.end());
        if (omega != prev)
          r.fail("omega event of " + to_string(t) + " for " + to_string(alpha) + " is not the stabilized event");
      }
    }
  }
  return r;
}

}  // namespace ipj
