#include <algorithm>

#include "ipj/axioms.hpp"
#include "ipj/error.hpp"
#include "ipj/semantics.hpp"

namespace ipj {

World EpistemicModel::add_world(const std::string& name) {
  if (by_name_.count(name) != 0) throw Error(ErrorKind::Model, "duplicate world " + name);
  World w = names_.size();
  names_.push_back(name);
  by_name_.emplace(name, w);
  for (auto& r : rel_) {
    for (auto& row : r) row.push_back(false);
    r.emplace_back(names_.size(), false);
  }
  val_.emplace_back();
  return w;
}

World EpistemicModel::world(const std::string& name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) throw Error(ErrorKind::Model, "unknown world " + name);
  return it->second;
}

void EpistemicModel::add_edge(Agent a, World from, World to) { rel_[index(a)][from][to] = true; }

std::vector<World> EpistemicModel::successors(Agent a, World from) const {
  std::vector<World> out;
  for (World u = 0; u < size(); ++u)
    if (accessible(a, from, u)) out.push_back(u);
  return out;
}

void EpistemicModel::set_true(World w, const std::string& atom) {
  val_[w].insert(atom);
  atoms_.insert(atom);
}

void EpistemicModel::add_evidence(World w, Agent a, const Term& t, const EFormula& alpha) {
  if (base_.emplace(w, static_cast<int>(index(a)), t, alpha).second) evidence_.push_back({w, a, t, alpha});
}

bool EpistemicModel::has_base(World w, Agent a, const Term& t, const EFormula& alpha) const {
  return base_.count({w, static_cast<int>(index(a)), t, alpha}) > 0;
}

std::optional<std::string> EpistemicModel::relation_defect() const {
  for (Agent a : {Agent::Prover, Agent::Verifier}) {
    std::string tag = std::string("R[") + agent_letter(a) + "]";
    for (World w = 0; w < size(); ++w) {
      if (!accessible(a, w, w)) return tag + " is not reflexive at " + names_[w];
      for (World u = 0; u < size(); ++u) {
        if (!accessible(a, w, u)) continue;
        for (World v = 0; v < size(); ++v)
          if (accessible(a, u, v) && !accessible(a, w, v))
            return tag + " is not transitive: " + names_[w] + " -> " + names_[u] + " -> " + names_[v];
      }
    }
  }
  return std::nullopt;
}

void Quasimodel::validate() const {
  if (auto d = model.relation_defect()) throw Error(ErrorKind::Model, *d);
  if (sample.empty()) throw Error(ErrorKind::Model, "sample U is empty");
  std::set<World> seen;
  for (World u : sample) {
    if (u >= model.size()) throw Error(ErrorKind::Model, "sample world out of range");
    if (!seen.insert(u).second) throw Error(ErrorKind::Model, "sample lists " + model.name(u) + " twice");
  }
  if (seen.count(w0) == 0) throw Error(ErrorKind::Model, "w0 is not in U");
  QEps total(0);
  for (World u : sample) {
    auto it = mass.find(u);
    if (it == mass.end()) throw Error(ErrorKind::Model, "no mass for " + model.name(u));
    if (it->second.sign() < 0) throw Error(ErrorKind::Model, "negative mass at " + model.name(u));
    total += it->second;
  }
  for (const auto& [w, m] : mass)
    if (seen.count(w) == 0) throw Error(ErrorKind::Model, "mass given for " + model.name(w) + " outside U");
  if (total != QEps(1)) throw Error(ErrorKind::Model, "masses sum to " + to_string(total) + ", not 1");
}

namespace {

void add_with_subformulas(std::set<EFormula>& pool, const Formula& f) {
  for (const EFormula& g : epistemic_subformulas(f)) pool.insert(g);
}

}  // namespace

Evaluator::Evaluator(const EpistemicModel& m, const std::set<EFormula>& extra_pool) : m_(m) {
  for (const auto& f : m.witness_pool()) add_with_subformulas(pool_, f);
  for (const auto& e : m.evidence()) add_with_subformulas(pool_, e.formula);
  for (const auto& f : extra_pool) add_with_subformulas(pool_, f);
}

Evaluator::Evaluator(const Quasimodel& q, const std::set<EFormula>& extra_pool) : Evaluator(q.model, extra_pool) {
  q_ = &q;
}

const Quasimodel& Evaluator::quasi() const {
  if (q_ == nullptr) throw Error(ErrorKind::Model, "measure requested without a sample space");
  return *q_;
}

bool Evaluator::evidence_member(World w, Agent a, const Term& t, const EFormula& alpha) {
  auto key = std::make_tuple(w, a == Agent::Prover ? 0 : 1, t, alpha);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  bool in = m_.has_base(w, a, t, alpha);
  if (!in) {
    switch (t.kind()) {
      case Term::Kind::Sum:
        in = evidence_member(w, a, t.left(), alpha) || evidence_member(w, a, t.right(), alpha);
        break;
      case Term::Kind::App:
        for (const EFormula& beta : pool_) {
          if (evidence_member(w, a, t.right(), beta) && evidence_member(w, a, t.left(), implies(beta, alpha))) {
            in = true;
            break;
          }
        }
        break;
      case Term::Kind::Bang:
        in = alpha.kind() == Formula::Kind::Just && alpha.agent() == a && alpha.term() == t.inner() &&
             evidence_member(w, a, t.inner(), alpha.body());
        break;
      case Term::Kind::Constant:
        in = is_axiom_chain(alpha);
        break;
      case Term::Kind::Proto:
        for (const auto& e : m_.evidence()) {
          if (e.world == w && e.agent == a && e.formula == alpha && e.term.kind() == Term::Kind::Proto &&
              e.term.inner() == t.inner() && e.term.complexity() < t.complexity()) {
            in = true;
            break;
          }
        }
        break;
      case Term::Kind::Variable: break;
    }
  }
  memo_.emplace(key, in);
  return in;
}

const std::vector<bool>& Evaluator::truth_set(const EFormula& alpha) {
  if (auto it = truth_.find(alpha); it != truth_.end()) return it->second;
  std::size_t n = m_.size();
  std::vector<bool> v(n, false);
  switch (alpha.kind()) {
    case Formula::Kind::Atom:
      if (m_.atoms().count(alpha.name()) == 0) throw Error(ErrorKind::UnknownAtom, "unknown atom " + alpha.name());
      for (World w = 0; w < n; ++w) v[w] = m_.valuation(w, alpha.name());
      break;
    case Formula::Kind::Not: {
      const auto& a = truth_set(alpha.arg());
      for (World w = 0; w < n; ++w) v[w] = !a[w];
      break;
    }
    case Formula::Kind::And: {
      std::vector<bool> a = truth_set(alpha.lhs());
      const auto& b = truth_set(alpha.rhs());
      for (World w = 0; w < n; ++w) v[w] = a[w] && b[w];
      break;
    }
    case Formula::Kind::Box:
    case Formula::Kind::Just: {
      std::vector<bool> body = truth_set(alpha.body());
      Agent a = alpha.agent();
      for (World w = 0; w < n; ++w) {
        bool all = true;
        for (World u = 0; u < n && all; ++u) all = !m_.accessible(a, w, u) || body[u];
        if (all && alpha.kind() == Formula::Kind::Just) all = evidence_member(w, a, alpha.term(), alpha.body());
        v[w] = all;
      }
      break;
    }
    default: throw Error(ErrorKind::NestedProbability, "probability operator in an epistemic position");
  }
  return truth_.emplace(alpha, std::move(v)).first->second;
}

bool Evaluator::holds(World w, const EFormula& alpha) { return truth_set(alpha)[w]; }

std::vector<World> Evaluator::event(const EFormula& alpha) {
  const auto& v = truth_set(alpha);
  std::vector<World> out;
  for (World u : quasi().sample)
    if (v[u]) out.push_back(u);
  return out;
}

QEps Evaluator::measure_of(const std::vector<World>& ev) const {
  QEps total(0);
  for (World u : ev) total += quasi().mass.at(u);
  return total;
}

QEps Evaluator::measure_of(const EFormula& alpha) { return measure_of(event(alpha)); }

bool Evaluator::eval(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Not: return !eval(f.arg());
    case Formula::Kind::And: return eval(f.lhs()) && eval(f.rhs());
    case Formula::Kind::ProbGeq: return measure_of(f.body()) >= f.threshold().constant();
    case Formula::Kind::ProbApprox: return approx_eq(measure_of(f.body()), f.approx_value());
    default: return holds(quasi().w0, f.as_epistemic());
  }
}

bool evidence_member(const EpistemicModel& m, World w, Agent a, const Term& t, const EFormula& alpha) {
  return Evaluator(m, {alpha}).evidence_member(w, a, t, alpha);
}

bool eval_epistemic(const EpistemicModel& m, World w, const EFormula& alpha) {
  return Evaluator(m, {alpha}).holds(w, alpha);
}

std::vector<World> event(const Quasimodel& q, const EFormula& alpha) { return Evaluator(q, {alpha}).event(alpha); }

QEps measure_of(const Quasimodel& q, const EFormula& alpha) { return Evaluator(q, {alpha}).measure_of(alpha); }

bool eval_formula(const Quasimodel& q, const Formula& f) {
  auto sub = epistemic_subformulas(f);
  return Evaluator(q, sub).eval(f);
}

bool check_independence(const Quasimodel& q, const EFormula& a, const EFormula& b) {
  Evaluator ev(q, {a, b});
  return ev.measure_of(EFormula::conjunction(a, b)) == ev.measure_of(a) * ev.measure_of(b);
}

std::string Report::text() const {
  std::string out;
  for (const auto& l : lines) out += l + "\n";
  out += pass ? "PASS\n" : "FAIL\n";
  return out;
}

}  // namespace ipj
