#include "ipj/protosim.hpp"

#include "ipj/error.hpp"
#include "ipj/syntax.hpp"

namespace ipj {

namespace {

constexpr unsigned kMaxRounds = 20;

void reflexive(EpistemicModel& m, World w) {
  m.add_edge(Agent::Prover, w, w);
  m.add_edge(Agent::Verifier, w, w);
}

Rational canonical(Rational r) {
  r.canonicalize();
  return r;
}

// 1 - 1/n^k
Rational completeness(std::uint64_t n, std::uint64_t k) {
  return 1 - rational_pow(Rational(1) / Rational(mpz_class(std::to_string(n))), static_cast<unsigned>(k));
}

}  // namespace

RoundModel build_round_model(const RoundConfig& cfg) {
  if (cfg.rounds == 0) throw Error(ErrorKind::Config, "at least one round is needed");
  if (cfg.rounds > kMaxRounds)
    throw Error(ErrorKind::Size, std::to_string(cfg.rounds) + " rounds exceed the limit of " +
                                     std::to_string(kMaxRounds));
  Rational r = canonical(cfg.error);
  if (r <= 0 || r >= 1) throw Error(ErrorKind::Config, "per-round error must lie strictly between 0 and 1");
  if (cfg.claim.kind() != Formula::Kind::Atom) throw Error(ErrorKind::Config, "the claim must be an atom");
  if (cfg.w0 && cfg.w0->size() != cfg.rounds)
    throw Error(ErrorKind::Config, "distinguished outcome vector has the wrong length");

  RoundModel out;
  out.config = cfg;
  for (unsigned i = 1; i <= cfg.rounds; ++i) out.round_terms.push_back(Term::constant("s" + std::to_string(i)));
  Quasimodel& q = out.quasi;
  EpistemicModel& m = q.model;
  const std::string& atom = cfg.claim.name();
  m.declare_atom(atom);

  std::size_t worlds = std::size_t{1} << cfg.rounds;
  Rational pass = 1 - r;
  for (std::size_t v = 0; v < worlds; ++v) {
    std::string name = "v";
    for (unsigned i = 0; i < cfg.rounds; ++i) name += ((v >> i) & 1U) ? '1' : '0';
    World w = m.add_world(name);
    reflexive(m, w);
    Rational mass(1);
    for (unsigned i = 0; i < cfg.rounds; ++i) {
      bool ok = (v >> i) & 1U;
      mass *= ok ? pass : r;
      if (ok) m.add_evidence(w, Agent::Verifier, out.round_terms[i], cfg.claim);
    }
    if (v != 0 || cfg.claim_everywhere) m.set_true(w, atom);
    if (cfg.honest && m.valuation(w, atom)) m.add_evidence(w, Agent::Prover, cfg.secret, cfg.claim);
    q.sample.push_back(w);
    q.mass[w] = QEps(mass);
  }
  std::vector<bool> pick = cfg.w0.value_or(std::vector<bool>(cfg.rounds, cfg.honest));
  std::size_t index = 0;
  for (unsigned i = 0; i < cfg.rounds; ++i)
    if (pick[i]) index |= std::size_t{1} << i;
  q.w0 = index;
  q.validate();
  return out;
}

IppReport verify_ipp_bound(const RoundModel& rm) {
  const RoundConfig& cfg = rm.config;
  Rational r = canonical(cfg.error);
  Rational round_mass = 1 - r;
  Evaluator ev(rm.quasi);
  IppReport out;
  Report& rep = out.report;

  std::vector<EFormula> rounds;
  std::optional<Formula> premises;
  for (std::size_t i = 0; i < rm.round_terms.size(); ++i) {
    EFormula e = EFormula::just(rm.round_terms[i], Agent::Verifier, cfg.claim);
    rounds.push_back(e);
    QEps mu = ev.measure_of(e);
    if (mu != QEps(round_mass))
      rep.fail("round " + std::to_string(i + 1) + " passes with mass " + to_string(mu) + ", expected " +
               to_string(round_mass));
    Formula p = Formula::prob_geq(Threshold(QEps(round_mass)), e);
    premises = premises ? Formula::conjunction(*premises, p) : p;
  }
  for (std::size_t i = 0; i < rounds.size(); ++i)
    for (std::size_t j = i + 1; j < rounds.size(); ++j)
      if (!check_independence(rm.quasi, rounds[i], rounds[j]))
        rep.fail("rounds " + std::to_string(i + 1) + " and " + std::to_string(j + 1) + " are not independent");

  out.bound = QEps(1 - rational_pow(r, cfg.rounds));
  out.measure = ev.measure_of(cfg.claim);
  rep.note("measure " + to_string(out.measure));
  rep.note("bound " + to_string(out.bound));
  if (out.measure < out.bound) rep.fail("measure " + to_string(out.measure) + " is below " + to_string(out.bound));
  Formula lemma = implies(*premises, Formula::prob_geq(Threshold(out.bound), cfg.claim));
  if (!eval_formula(rm.quasi, lemma)) rep.fail("the bound implication is false in the model");
  return out;
}

Quasimodel build_interaction_witness(const InteractionSpec& spec, const WitnessConfig& cfg) {
  if (cfg.alpha.kind() != Formula::Kind::Atom) throw Error(ErrorKind::Config, "alpha must be an atom");
  if (spec.find(cfg.alpha) == nullptr) throw Error(ErrorKind::Config, "alpha has no spec entry");
  if (!cfg.t.is_protocol_free()) throw Error(ErrorKind::Config, "t must be f-free");
  auto m = spec.threshold(cfg.alpha, cfg.k);
  if (!m) throw Error(ErrorKind::Config, "no threshold for k = " + std::to_string(cfg.k));
  if (cfg.nmax <= *m)
    throw Error(ErrorKind::Config, "nmax must exceed the threshold " + std::to_string(*m));

  Quasimodel q;
  EpistemicModel& model = q.model;
  const std::string& atom = cfg.alpha.name();
  EFormula boxed = EFormula::box(Agent::Prover, cfg.alpha);
  EFormula claim = EFormula::just(cfg.t, Agent::Prover, cfg.alpha);
  auto proto = [&](std::uint64_t n) { return Term::proto(Complexity::finite(n), cfg.t); };
  auto world = [&](const std::string& name, const QEps& mass) {
    World w = model.add_world(name);
    reflexive(model, w);
    model.set_true(w, atom);
    if (cfg.honest) model.add_evidence(w, Agent::Prover, cfg.t, cfg.alpha);
    q.sample.push_back(w);
    q.mass[w] = mass;
    return w;
  };
  QEps eps = QEps::epsilon();

  if (cfg.honest) {
    // The world first reached at n carries the increment of 1 - 1/n^k.
    Rational prev(0);
    for (std::uint64_t n = *m + 1; n <= cfg.nmax; ++n) {
      Rational b = completeness(n, cfg.k);
      World w = world("n" + std::to_string(n), QEps(b - prev));
      model.add_evidence(w, Agent::Verifier, proto(n), boxed);
      prev = b;
    }
    World stable = world("stable", QEps(1 - prev) - eps);
    model.add_evidence(stable, Agent::Verifier, proto(cfg.nmax + 1), boxed);
    World residue = world("residue", eps);
    if (cfg.zk) model.add_evidence(residue, Agent::Verifier, proto(*m + 1), claim);
    q.w0 = 0;
  } else {
    q.w0 = world("base", QEps(1) - eps);
    World leak = world("leak", eps);
    model.add_evidence(leak, Agent::Verifier, proto(*m + 1), boxed);
  }
  q.validate();
  return q;
}

}  // namespace ipj
