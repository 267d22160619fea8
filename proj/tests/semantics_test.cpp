#include <gtest/gtest.h>

#include <random>

#include "ipj/error.hpp"
#include "ipj/generator.hpp"
#include "ipj/model_io.hpp"
#include "ipj/semantics.hpp"
#include "ipj/syntax.hpp"

using namespace ipj;

namespace {

EFormula ef(const char* s) { return parse_eformula(s); }
Term term(const char* s) { return parse_term(s); }
QEps q(long n, long d) {
  Rational r(n, d);
  r.canonicalize();
  return QEps(r);
}

EpistemicModel one_world(std::initializer_list<const char*> atoms) {
  EpistemicModel m;
  World w = m.add_world("w");
  m.add_edge(Agent::Prover, w, w);
  m.add_edge(Agent::Verifier, w, w);
  for (const char* a : {"p", "q", "r"}) m.declare_atom(a);
  for (const char* a : atoms) m.set_true(w, a);
  return m;
}

// Two sample worlds u1, u2 with the given masses; p holds only at u1.
Quasimodel two_point(QEps m1, QEps m2) {
  Quasimodel qm;
  World u1 = qm.model.add_world("u1");
  World u2 = qm.model.add_world("u2");
  for (World w : {u1, u2})
    for (Agent a : {Agent::Prover, Agent::Verifier}) qm.model.add_edge(a, w, w);
  qm.model.declare_atom("p");
  qm.model.set_true(u1, "p");
  qm.sample = {u1, u2};
  qm.mass = {{u1, m1}, {u2, m2}};
  qm.w0 = u1;
  qm.validate();
  return qm;
}

}  // namespace

TEST(Evidence, ProtocolMonotonicity) {
  EpistemicModel m = one_world({"p"});
  m.add_evidence(0, Agent::Verifier, term("f[1](t)"), ef("p"));
  EXPECT_TRUE(evidence_member(m, 0, Agent::Verifier, term("f[5](t)"), ef("p")));
  EXPECT_TRUE(evidence_member(m, 0, Agent::Verifier, term("f[w](t)"), ef("p")));
  EXPECT_FALSE(evidence_member(m, 0, Agent::Verifier, term("f[0](t)"), ef("p")));
  EXPECT_FALSE(evidence_member(m, 0, Agent::Prover, term("f[5](t)"), ef("p")));
}

TEST(Evidence, Application) {
  EpistemicModel m = one_world({"p", "q"});
  m.add_evidence(0, Agent::Prover, term("s"), ef("p -> q"));
  m.add_evidence(0, Agent::Prover, term("t"), ef("p"));
  EXPECT_TRUE(evidence_member(m, 0, Agent::Prover, term("s*t"), ef("q")));
  EXPECT_FALSE(evidence_member(m, 0, Agent::Prover, term("t*s"), ef("q")));
}

TEST(Evidence, BangSumConstant) {
  EpistemicModel m = one_world({"p"});
  m.add_evidence(0, Agent::Prover, term("t"), ef("p"));
  EXPECT_TRUE(evidence_member(m, 0, Agent::Prover, term("!t"), ef("t :[P] p")));
  EXPECT_FALSE(evidence_member(m, 0, Agent::Prover, term("!t"), ef("t :[V] p")));
  EXPECT_TRUE(evidence_member(m, 0, Agent::Prover, term("s + t"), ef("p")));
  EXPECT_TRUE(evidence_member(m, 0, Agent::Prover, term("t + s"), ef("p")));
  EXPECT_TRUE(evidence_member(m, 0, Agent::Verifier, term("c:k"), ef("box[P] q -> q")));
  EXPECT_TRUE(evidence_member(m, 0, Agent::Verifier, term("c:k"), ef("c:j :[P] (box[P] q -> q)")));
  EXPECT_FALSE(evidence_member(m, 0, Agent::Verifier, term("c:k"), ef("q -> box[P] q")));
  EXPECT_FALSE(evidence_member(m, 0, Agent::Verifier, term("x"), ef("box[P] q -> q")));
}

TEST(Truth, Examples) {
  EpistemicModel m = one_world({"p"});
  EXPECT_TRUE(eval_epistemic(m, 0, ef("box[P] p")));
  EXPECT_FALSE(eval_epistemic(m, 0, ef("t :[P] p")));
  EXPECT_THROW(eval_epistemic(m, 0, ef("zz")), Error);

  EpistemicModel two;
  World w = two.add_world("w");
  World u = two.add_world("u");
  for (Agent a : {Agent::Prover, Agent::Verifier}) {
    two.add_edge(a, w, w);
    two.add_edge(a, u, u);
  }
  two.add_edge(Agent::Verifier, w, u);
  two.set_true(w, "p");
  EXPECT_FALSE(eval_epistemic(two, w, ef("box[V] p")));
  EXPECT_TRUE(eval_epistemic(two, w, ef("box[P] p")));
}

TEST(Truth, JustificationNeedsEvidenceAndTruth) {
  EpistemicModel m = one_world({});
  m.add_evidence(0, Agent::Prover, term("t"), ef("p"));
  EXPECT_FALSE(eval_epistemic(m, 0, ef("t :[P] p")));
  m.set_true(0, "p");
  EXPECT_TRUE(eval_epistemic(m, 0, ef("t :[P] p")));
}

TEST(Measure, Examples) {
  Quasimodel single;
  World w0 = single.model.add_world("w0");
  for (Agent a : {Agent::Prover, Agent::Verifier}) single.model.add_edge(a, w0, w0);
  single.model.set_true(w0, "p");
  single.sample = {w0};
  single.mass = {{w0, QEps(1)}};
  EXPECT_EQ(measure_of(single, ef("p")), QEps(1));

  Quasimodel half = two_point(q(1, 2), q(1, 2));
  EXPECT_EQ(measure_of(half, ef("p")), q(1, 2));
  EXPECT_EQ(measure_of(half, ef("p")) + measure_of(half, ef("~p")), QEps(1));
  EXPECT_TRUE(eval_formula(half, parse_formula("Pr>= 1/2 (p)")));
  EXPECT_FALSE(eval_formula(half, parse_formula("Pr> 1/2 (p)")));
  EXPECT_FALSE(check_independence(half, ef("p"), ef("p")));
  EXPECT_TRUE(check_independence(single, ef("p"), ef("p")));
}

TEST(Measure, AlmostOne) {
  Quasimodel qm = two_point(QEps(1) - QEps::epsilon(), QEps::epsilon());
  EXPECT_TRUE(eval_formula(qm, parse_formula("Pr~ 1 (p)")));
  EXPECT_FALSE(eval_formula(qm, parse_formula("Pr>= 1 (p)")));
  EXPECT_TRUE(eval_formula(qm, parse_formula("Pr~ 0 (~p)")));
  EXPECT_TRUE(eval_formula(qm, parse_formula("p")));
  EXPECT_FALSE(eval_formula(qm, parse_formula("~p")));
}

TEST(Measure, ProductIndependence) {
  // {0,1}^2 with the uniform product measure; a = first coordinate, b = second.
  Quasimodel qm;
  for (int i = 0; i < 4; ++i) {
    World w = qm.model.add_world("v" + std::to_string(i));
    for (Agent a : {Agent::Prover, Agent::Verifier}) qm.model.add_edge(a, w, w);
    qm.model.declare_atom("a");
    qm.model.declare_atom("b");
    if (i & 1) qm.model.set_true(w, "a");
    if (i & 2) qm.model.set_true(w, "b");
    qm.sample.push_back(w);
    qm.mass[w] = q(1, 4);
  }
  EXPECT_TRUE(check_independence(qm, ef("a"), ef("b")));
  EXPECT_FALSE(check_independence(qm, ef("a"), ef("a & b")));
}

TEST(Quasimodel, ValidateRejects) {
  Quasimodel qm = two_point(q(1, 2), q(1, 2));
  qm.mass[1] = q(1, 3);
  EXPECT_THROW(qm.validate(), Error);
  Quasimodel bad = two_point(q(1, 2), q(1, 2));
  World c = bad.model.add_world("c");
  for (Agent a : {Agent::Prover, Agent::Verifier}) bad.model.add_edge(a, c, c);
  bad.model.add_edge(Agent::Prover, 0, 1);
  bad.model.add_edge(Agent::Prover, 1, c);
  EXPECT_THROW(bad.validate(), Error);
  bad.model.add_edge(Agent::Prover, 0, c);
  EXPECT_NO_THROW(bad.validate());
  bad.w0 = c;
  EXPECT_THROW(bad.validate(), Error);
}

namespace {

// t:[P] a holds at w0; the f[3](t) event for box[P] a has the given mass.
Quasimodel condition_model(QEps event_mass, bool honest, bool stabilize_high) {
  Quasimodel qm;
  World good = qm.model.add_world("good");
  World bad = qm.model.add_world("bad");
  for (World w : {good, bad})
    for (Agent a : {Agent::Prover, Agent::Verifier}) qm.model.add_edge(a, w, w);
  qm.model.set_true(good, "a");
  qm.model.set_true(bad, "a");
  if (honest) qm.model.add_evidence(good, Agent::Prover, term("t"), ef("a"));
  qm.model.add_evidence(good, Agent::Verifier, term("f[3](t)"), ef("box[P] a"));
  if (stabilize_high) qm.model.add_evidence(bad, Agent::Verifier, term("f[4](t)"), ef("box[P] a"));
  qm.sample = {good, bad};
  qm.mass = {{good, event_mass}, {bad, QEps(1) - event_mass}};
  qm.w0 = good;
  qm.validate();
  return qm;
}

InteractionSpec const_spec(const char* alpha, std::uint64_t m) {
  InteractionSpec s;
  s.add(ef(alpha), ThresholdFn::constant(m));
  return s;
}

}  // namespace

TEST(ModelConditions, HonestAtEightNinths) {
  // Condition 1 at n = 3, k = 2: 1 - 1/9. The event then grows to all of U.
  Quasimodel qm = condition_model(q(8, 9), true, true);
  Universe u{{term("t")}, {}};
  ConditionOptions o;
  o.kmin = 2;
  o.kmax = 2;
  Report r = check_model_conditions(qm, const_spec("a", 2), u, o);
  EXPECT_TRUE(r.pass) << r.text();
  EXPECT_EQ(stabilization_index(qm.model, term("t")), 4U);

  // With threshold 1 the n = 2 probe would require 3/4 and see nothing yet.
  Report low = check_model_conditions(qm, const_spec("a", 1), u, o);
  EXPECT_FALSE(low.pass);
}

TEST(ModelConditions, LimitFormFailsAtNineTenths) {
  Quasimodel qm = condition_model(q(9, 10), true, false);
  Universe u{{term("t")}, {}};
  ConditionOptions o;
  o.kmin = 1;
  o.kmax = 1;
  Report r = check_model_conditions(qm, const_spec("a", 2), u, o);
  EXPECT_FALSE(r.pass);
  EXPECT_NE(r.counterexample.find("limit"), std::string::npos) << r.counterexample;
  EXPECT_NE(r.counterexample.find("9/10"), std::string::npos) << r.counterexample;
}

TEST(ModelConditions, DishonestInfinitesimal) {
  Quasimodel qm = condition_model(QEps::epsilon(), false, false);
  Universe u{{term("t")}, {}};
  Report r = check_model_conditions(qm, const_spec("a", 1), u);
  EXPECT_TRUE(r.pass) << r.text();

  Quasimodel loud = condition_model(q(1, 2), false, false);
  EXPECT_FALSE(check_model_conditions(loud, const_spec("a", 1), u).pass);
}

TEST(ModelConditions, OmegaMustMatchStabilized) {
  Quasimodel qm = condition_model(QEps(1) - QEps::epsilon(), true, false);
  qm.model.add_evidence(1, Agent::Verifier, term("f[w](t)"), ef("box[P] a"));
  Universe u{{term("t")}, {}};
  Report r = check_model_conditions(qm, const_spec("a", 1), u);
  EXPECT_FALSE(r.pass);
  EXPECT_NE(r.counterexample.find("omega"), std::string::npos);
}

TEST(ModelConditions, UniverseErrors) {
  Quasimodel qm = condition_model(q(1, 2), true, false);
  EXPECT_THROW(check_model_conditions(qm, const_spec("zz", 1), Universe{{term("t")}, {}}), Error);
  EXPECT_THROW(check_model_conditions(qm, const_spec("a", 1), Universe{{term("f[1](t)")}, {}}), Error);
}

TEST(EvidenceClosure, Audit) {
  EpistemicModel m = one_world({"p"});
  m.add_evidence(0, Agent::Prover, term("t"), ef("p"));
  m.add_evidence(0, Agent::Verifier, term("f[1](t)"), ef("p"));
  Universe u{{term("s + t"), term("f[3](t)"), term("f[1](t)")}, {ef("p")}};
  EXPECT_TRUE(check_evidence_closure(m, u, EvidenceMode::Closure).pass);

  Report sum = check_evidence_closure(m, Universe{{term("s + t")}, {ef("p")}}, EvidenceMode::Extensional);
  EXPECT_FALSE(sum.pass);
  EXPECT_NE(sum.counterexample.find("condition 1"), std::string::npos) << sum.counterexample;

  EpistemicModel f = one_world({"p"});
  f.add_evidence(0, Agent::Verifier, term("f[1](t)"), ef("p"));
  Report mono = check_evidence_closure(f, Universe{{term("f[3](t)")}, {ef("p")}}, EvidenceMode::Extensional);
  EXPECT_FALSE(mono.pass);
  EXPECT_NE(mono.counterexample.find("condition 5"), std::string::npos) << mono.counterexample;
}

TEST(EvidencePersistence, Detects) {
  EpistemicModel m;
  World w = m.add_world("w");
  World u = m.add_world("u");
  for (Agent a : {Agent::Prover, Agent::Verifier}) {
    m.add_edge(a, w, w);
    m.add_edge(a, u, u);
  }
  m.add_edge(Agent::Prover, w, u);
  m.add_evidence(w, Agent::Prover, term("t"), ef("p"));
  EXPECT_FALSE(check_evidence_persistence(m).pass);
  m.add_evidence(u, Agent::Prover, term("t"), ef("p"));
  EXPECT_TRUE(check_evidence_persistence(m).pass);
}

TEST(ModelFile, LoadAndRoundTrip) {
  const char* text = R"(# two sample worlds
worlds: u1 u2
R[P]:
u1 -> u1
u2 -> u2
R[V]:
u1 -> u1 u2
u2 -> u2
val:
u1 : p
u2 : p q
evidence:
u1 [V] f[2](t) : box[P] p
u2 [V] f[2](t) : box[P] p
u1 [P] c:k * t : p
U: u1 u2
mu:
u1 = 1 + -1e
u2 = 1e
w0: u1
)";
  ModelFile mf = load_model(text);
  ASSERT_TRUE(mf.has_measure);
  EXPECT_EQ(mf.terms, std::set<Term>{term("t")});
  EXPECT_EQ(measure_of(mf.quasi, ef("q")), QEps::epsilon());
  EXPECT_TRUE(eval_formula(mf.quasi, parse_formula("Pr~ 1 (f[3](t) :[V] box[P] p)")));
  ModelFile again = load_model(write_model(mf.quasi, mf.terms));
  EXPECT_EQ(write_model(again.quasi, again.terms), write_model(mf.quasi, mf.terms));
}

TEST(ModelFile, Errors) {
  EXPECT_THROW(load_model("worlds: a\nR[P]:\na -> a\nR[V]:\n"), Error);  // V not reflexive
  EXPECT_THROW(load_model("worlds: a\nR[P]:\na -> b\n"), Error);
  EXPECT_THROW(load_model("p q\n"), SyntaxError);
  const char* masses = "worlds: a\nR[P]:\na -> a\nR[V]:\na -> a\nU: a\nmu:\na = 1/2\nw0: a\n";
  EXPECT_THROW(load_model(masses), Error);
}

// Properties over generated models.

TEST(Generated, PassModelConditionsAndAudits) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 150; ++i) {
    GeneratedModel g = random_model(rng);
    ConditionOptions o;
    o.zk = true;
    o.kmax = g.kmax;
    Report r = check_model_conditions(g.quasi, g.spec, Universe{g.terms, {}}, o);
    ASSERT_TRUE(r.pass) << r.text() << write_model(g.quasi, g.terms) << to_text(g.spec);
    ASSERT_TRUE(check_evidence_persistence(g.quasi.model).pass);
  }
}

TEST(Generated, MeasureAxiomsAndSugar) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    GeneratedModel g = random_model(rng);
    std::mt19937_64 local(i);
    for (int j = 0; j < 10; ++j) {
      EFormula a = random_instance(local, g, SchemaId::P1)->body();
      EFormula b = random_instance(local, g, SchemaId::P1)->body();
      Evaluator ev(g.quasi, {a, b});
      QEps ma = ev.measure_of(a);
      EXPECT_EQ(ma + ev.measure_of(EFormula::negation(a)), QEps(1));
      QEps disjoint = ev.measure_of(EFormula::conjunction(a, b)) +
                      ev.measure_of(EFormula::conjunction(a, EFormula::negation(b)));
      EXPECT_EQ(disjoint, ma);
      for (QEps s : {QEps(0), q(1, 2), QEps(1) - QEps::epsilon(), QEps(1)})
        EXPECT_EQ(eval_formula(g.quasi, prob_leq(Threshold(s), a)), ma <= s);
    }
  }
}

TEST(Generated, ApproxOneIsNormal) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 150; ++i) {
    GeneratedModel g = random_model(rng);
    std::mt19937_64 local(i);
    EFormula a = random_instance(local, g, SchemaId::P1)->body();
    EFormula b = random_instance(local, g, SchemaId::P1)->body();
    Evaluator ev(g.quasi, {a, b, implies(a, b)});
    bool imp = approx_eq(ev.measure_of(implies(a, b)), Rational(1));
    bool pre = approx_eq(ev.measure_of(a), Rational(1));
    if (imp && pre) {
      EXPECT_TRUE(approx_eq(ev.measure_of(b), Rational(1)));
    }
    if (ev.event(a).size() == g.quasi.sample.size()) {
      EXPECT_EQ(ev.measure_of(a), QEps(1));
    }
  }
}

TEST(Generated, EventsMonotone) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 100; ++i) {
    GeneratedModel g = random_model(rng);
    std::set<EFormula> fs;
    for (const auto& e : g.spec.entries()) fs.insert(EFormula::box(Agent::Prover, e.formula));
    fs.insert(ef("p"));
    Report r = check_event_monotonicity(g.quasi, Universe{g.terms, {}}, fs);
    ASSERT_TRUE(r.pass) << r.text();
  }
}

TEST(Soundness, SpotCheck) {
  SoundnessReport r = soundness_harness(3, 40, 200);
  EXPECT_EQ(r.models, 40U);
  EXPECT_GT(r.instances, 6000U);
  for (const auto& f : r.failures) ADD_FAILURE() << f;
  EXPECT_TRUE(r.pass());
}

namespace {

// Same model without any f-term evidence.
Quasimodel strip_protocol_evidence(const Quasimodel& src) {
  Quasimodel out = src;
  EpistemicModel m;
  for (World w = 0; w < src.model.size(); ++w) m.add_world(src.model.name(w));
  for (World w = 0; w < src.model.size(); ++w) {
    for (Agent a : {Agent::Prover, Agent::Verifier})
      for (World u : src.model.successors(a, w)) m.add_edge(a, w, u);
    for (const std::string& p : src.model.true_atoms(w)) m.set_true(w, p);
  }
  for (const std::string& p : src.model.atoms()) m.declare_atom(p);
  for (const auto& e : src.model.evidence())
    if (e.term.kind() != Term::Kind::Proto) m.add_evidence(e.world, e.agent, e.term, e.formula);
  out.model = m;
  return out;
}

}  // namespace

TEST(Soundness, HarnessCatchesMissingEvidence) {
  std::mt19937_64 rng(23);
  std::size_t falsified = 0;
  for (int i = 0; i < 200; ++i) {
    GeneratedModel g = random_model(rng);
    g.quasi = strip_protocol_evidence(g.quasi);
    for (int j = 0; j < 10; ++j) {
      auto f = random_instance(rng, g, SchemaId::COmega);
      if (f && !eval_formula(g.quasi, *f)) ++falsified;
    }
  }
  EXPECT_GT(falsified, 0U);
}
