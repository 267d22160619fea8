#include <gtest/gtest.h>

#include "golden.hpp"
#include "ipj/axioms.hpp"
#include "ipj/error.hpp"
#include "ipj/proofcheck.hpp"
#include "ipj/syntax.hpp"

using namespace ipj;
using testgen::read_data;

namespace {

InteractionSpec spec_p1() { return load_spec("p : const 1\n"); }

std::optional<AxiomMatch> match(const std::string& text, const InteractionSpec* spec = nullptr, bool zk = false) {
  AxiomContext ctx{spec, zk, {}};
  return match_axiom(parse_formula(text), ctx);
}

ProofReport check_text(const std::string& text, const InteractionSpec& spec = {}) {
  return check_derivation(parse_derivation(text, spec, false, file_loader(IPJ_TEST_DATA)));
}

TemplateLoader memory(std::map<std::string, std::string> files) {
  return [files = std::move(files)](const std::string& path) { return files.at(path); };
}

}  // namespace

TEST(MatchAxiom, InteractionC) {
  InteractionSpec spec = spec_p1();
  auto m = match("t:[P]p -> Pr>= 8/9 (f[3](t) :[V] box[P] p)", &spec);
  ASSERT_TRUE(m.has_value());
  EXPECT_EQ(m->id, SchemaId::C);
  EXPECT_EQ(m->bindings.n, 3U);
  EXPECT_EQ(m->bindings.k, 2U);
  // oracle: 1 - 1/3^2
  EXPECT_EQ(Rational(1) - Rational(1, 9), Rational(8, 9));
  EXPECT_EQ(interaction_bound(3, 2), QEps(Rational(8, 9)));
  EXPECT_FALSE(match("t:[P]p -> Pr>= 8/9 (f[1](t) :[V] box[P] p)", &spec).has_value());
  EXPECT_FALSE(match("t:[P]p -> Pr>= 7/9 (f[3](t) :[V] box[P] p)", &spec).has_value());
  EXPECT_FALSE(match("t:[P]q -> Pr>= 8/9 (f[3](t) :[V] box[P] q)", &spec).has_value());
}

TEST(MatchAxiom, Examples) {
  auto k = match("box[V](p->q) -> (box[V]p -> box[V]q)");
  ASSERT_TRUE(k.has_value());
  EXPECT_EQ(k->id, SchemaId::K);
  EXPECT_FALSE(match_schema(SchemaId::P2, parse_formula("Pr<= 1/2 (p) -> Pr< 1/3 (p)"), {}).bindings.has_value());
  EXPECT_FALSE(match("Pr<= 1/2 (p) -> Pr< 1/3 (p)").has_value());
  auto p2 = match("Pr<= 1/3 (p) -> Pr< 1/2 (p)");
  ASSERT_TRUE(p2.has_value());
  EXPECT_EQ(p2->id, SchemaId::P2);
}

TEST(MatchAxiom, EachSchema) {
  InteractionSpec spec = load_spec("p : const 1\nq : table 0 -> 2\n");
  struct Case {
    const char* text;
    SchemaId id;
  } cases[] = {
      {"p -> q -> p", SchemaId::P},
      {"box[P] p -> p", SchemaId::T},
      {"box[V] p -> box[V] box[V] p", SchemaId::Four},
      {"s :[P] (p -> q) -> (t :[P] p -> s * t :[P] q)", SchemaId::J},
      {"s :[V] p | t :[V] p -> s + t :[V] p", SchemaId::JPlus},
      {"t :[P] p -> p", SchemaId::JT},
      {"t :[P] p -> !t :[P] t :[P] p", SchemaId::J4},
      {"t :[V] p -> box[V] p", SchemaId::JYB},
      {"Pr>= 0 (p)", SchemaId::P1},
      {"Pr< 1/2 (p) -> Pr<= 1/2 (p)", SchemaId::P3},
      {"Pr>= 1 (p <-> q) -> (Pr= 1/3 (p) -> Pr= 1/3 (q))", SchemaId::P4},
      {"Pr<= 1/4 (p) <-> Pr>= 3/4 (~p)", SchemaId::P},
      {"Pr= 1/2 (p) & Pr= 3/4 (q) & Pr>= 1 (~(p & q)) -> Pr= 1 (p | q)", SchemaId::P6},
      {"Pr= 1/4 (p) & Pr= 1/4 (q) & Pr>= 1 (~(p & q)) -> Pr= 1/2 (p | q)", SchemaId::P6},
      {"Pr~ 1/2 (p) -> Pr>= 1/3 (p)", SchemaId::PA1},
      {"Pr~ 1/2 (p) -> Pr<= 2/3 (p)", SchemaId::PA2},
      {"f[2](t) :[V] p -> f[w](t) :[V] p", SchemaId::M},
      {"~t :[P] p -> Pr<= 1/4 (f[2](t) :[V] box[P] p)", SchemaId::S},
      {"t :[P] p -> Pr~ 1 (f[w](t) :[V] box[P] p)", SchemaId::COmega},
      {"~t :[P] p -> Pr~ 0 (f[w](t) :[V] box[P] p)", SchemaId::SOmega},
      {"t :[P] q -> Pr>= 0 (f[3](t) :[V] box[P] q)", SchemaId::C},
  };
  for (const auto& c : cases) {
    auto m = match(c.text, &spec);
    ASSERT_TRUE(m.has_value()) << c.text;
    EXPECT_EQ(m->id, c.id) << c.text;
    EXPECT_EQ(instantiate(m->id, m->bindings), parse_formula(c.text)) << c.text;
  }
  // (p5) is also a tautology in this representation; check it directly.
  EXPECT_TRUE(match_schema(SchemaId::P5, parse_formula("Pr<= 1/4 (p) <-> Pr>= 3/4 (~p)"), {}).bindings.has_value());
  EXPECT_FALSE(match("Pr= 1/2 (p) & Pr= 3/4 (q) & Pr>= 1 (~(p & q)) -> Pr= 3/4 (p | q)", &spec).has_value());
  EXPECT_FALSE(match("Pr~ 1/2 (p) -> Pr>= 1/2 (p)").has_value());
  EXPECT_FALSE(match("Pr~ 1/2 (p) -> Pr>= 1/3 + 1 e (p)").has_value());
  EXPECT_FALSE(match("f[w](t) :[V] p -> f[2](t) :[V] p").has_value());
  EXPECT_FALSE(match("~t :[P] r -> Pr~ 0 (f[w](t) :[V] box[P] r)", &spec).has_value());
}

TEST(MatchAxiom, ZeroKnowledgeFlag) {
  InteractionSpec spec = spec_p1();
  const char* zk1 = "t :[P] p -> Pr<= 1/4 (f[2](t) :[V] t :[P] p)";
  const char* zk2 = "t :[P] p -> Pr~ 0 (f[w](t) :[V] t :[P] p)";
  EXPECT_FALSE(match(zk1, &spec).has_value());
  EXPECT_FALSE(match(zk2, &spec).has_value());
  ASSERT_TRUE(match(zk1, &spec, true).has_value());
  EXPECT_EQ(match(zk1, &spec, true)->id, SchemaId::ZK1);
  EXPECT_EQ(match(zk2, &spec, true)->id, SchemaId::ZK2);
}

TEST(MatchAxiom, SideData) {
  InteractionSpec spec = load_spec("p : poly 0 1\n");
  Formula f = parse_formula("t :[P] p -> Pr>= 8/9 (f[3](t) :[V] box[P] p)");
  AxiomContext ctx{&spec, false, {}};
  EXPECT_TRUE(match_schema(SchemaId::C, f, ctx, {3, 2, 2}).bindings.has_value());
  EXPECT_FALSE(match_schema(SchemaId::C, f, ctx, {3, 2, 1}).bindings.has_value());
  EXPECT_FALSE(match_schema(SchemaId::C, f, ctx, {4, 2, {}}).bindings.has_value());
}

TEST(MatchAxiom, Notes) {
  std::vector<std::string> notes;
  EXPECT_FALSE(match_axiom(parse_formula("p"), {}, &notes).has_value());
  EXPECT_FALSE(notes.empty());
}

TEST(Tautology, Abstraction) {
  EXPECT_TRUE(is_tautology(parse_formula("box[P] p | ~box[P] p")));
  EXPECT_FALSE(is_tautology(parse_formula("box[P] p -> p")));
  EXPECT_TRUE(is_tautology(parse_formula("Pr>= 1/2 (p) -> Pr>= 1/2 (p)")));
  EXPECT_FALSE(is_tautology(parse_formula("Pr>= 1/2 (p) -> Pr>= 1/3 (p)")));
}

TEST(Derivation, Examples) {
  EXPECT_TRUE(check_text("1. p -> p ; ax p\n2. Pr>= 1 (p -> p) ; pnec 1\n").valid);
  ProofReport r = check_text("1. p ; ax p\n");
  EXPECT_FALSE(r.valid);
  EXPECT_EQ(r.failed_index, 1U);
  EXPECT_FALSE(check_text("1. p -> p ; ax p\n2. box[P] (p -> q) ; nec[P] 1\n").valid);
  EXPECT_TRUE(check_text("1. p -> p ; ax p\n2. box[V] (p -> p) ; nec[V] 1\n").valid);
  EXPECT_TRUE(check_text("1. c:a :[P] c:b :[V] (box[P] p -> p) ; axnec a[P] b[V]\n").valid);
  EXPECT_FALSE(check_text("1. c:a :[P] (box[P] p -> q) ; axnec a[P]\n").valid);
  EXPECT_FALSE(check_text("1. Pr>= 1 (p) -> Pr>= 1 (p) ; ax p\n2. Pr>= 1 (p -> p) ; pnec 1\n").valid);
  EXPECT_THROW(check_text("1. Pr>= 1 (p) -> Pr>= 1 (p) ; ax p\n2. Pr>= 1 (Pr>= 1 (p) -> Pr>= 1 (p)) ; pnec 1\n"), Error);
}

TEST(Derivation, StructureErrors) {
  EXPECT_THROW(check_text("1. p -> p ; ax p\n2. p -> p ; mp 2 3\n"), Error);
  EXPECT_THROW(check_text("1. p -> p ; ax p\n1. p -> p ; ax p\n"), Error);
  EXPECT_THROW(check_text("1. p -> p ; frobnicate\n"), SyntaxError);
}

TEST(Derivation, Goldens) {
  for (const auto& g : testgen::goldens()) {
    EXPECT_TRUE(testgen::accepts(read_data(g.proof), g.spec)) << g.proof;
  }
}

TEST(Derivation, MutantsRejected) {
  for (const auto& g : testgen::goldens()) {
    auto ms = testgen::mutants(read_data(g.proof));
    EXPECT_FALSE(ms.empty());
    for (const auto& m : ms) EXPECT_FALSE(testgen::accepts(m, g.spec)) << m;
  }
}

TEST(Derivation, PrefixMonotone) {
  for (const auto& g : testgen::goldens()) {
    std::istringstream in(read_data(g.proof));
    std::string prefix;
    for (std::string line; std::getline(in, line);) {
      prefix += line + "\n";
      if (line.empty() || line[0] == '#') continue;
      EXPECT_TRUE(testgen::accepts(prefix, g.spec)) << prefix;
    }
  }
}

TEST(Parametric, ApproxIntro) {
  EXPECT_TRUE(check_text(read_data("approx.proof")).valid);
  Derivation t = parse_derivation(read_data("approx_one.tmpl"), {}, false, {}, Parameter::Nu);
  Formula goal = parse_formula("Pr~ 1 (p) -> Pr~ 1 (p)");
  EXPECT_TRUE(check_parametric_step(t, goal, Justification::Kind::ApproxIntro, Rational(1)).valid);
  for (std::uint64_t nu : {1, 2, 8}) {
    ProofReport r = check_derivation(instantiate_template(t, nu));
    EXPECT_TRUE(r.valid) << nu << ": " << r.reason;
  }
  // conclusion value must match the template
  EXPECT_FALSE(check_parametric_step(t, parse_formula("Pr~ 1 (p) -> Pr~ 1/2 (p)"), Justification::Kind::ApproxIntro,
                                     Rational(1, 2))
                   .valid);
}

TEST(Parametric, MissingLowerBound) {
  std::string tmpl =
      "1. Pr>= 0 (~p) ; ax p1\n"
      "2. Pr>= 0 (~p) -> (Pr~ 1 (p) -> Pr>= 0 (~p)) ; ax p\n"
      "3. Pr~ 1 (p) -> Pr<= 1 (p) ; mp 1 2\n";
  Derivation t = parse_derivation(tmpl, {}, false, {}, Parameter::Nu);
  ProofReport r = check_parametric_step(t, parse_formula("Pr~ 1 (p) -> Pr~ 1 (p)"), Justification::Kind::ApproxIntro,
                                        Rational(1));
  EXPECT_FALSE(r.valid);
  EXPECT_NE(r.reason.find("missing premise shape"), std::string::npos);
}

TEST(Parametric, HalfWithWeakenedBounds) {
  // r = 1/2, nu >= 2: lower bound 1/2 - 1/v is derivable from Pr~ 1/2 by (pa1).
  std::string tmpl =
      "1. Pr~ 1/2 (p) -> Pr>= 1/2 + -1/v (p) ; ax pa1\n"
      "2. Pr~ 1/2 (p) -> Pr<= 1/2 + 1/v (p) ; ax pa2\n";
  auto loader = memory({{"h.tmpl", tmpl}});
  Derivation d = parse_derivation("1. Pr~ 1/2 (p) -> Pr~ 1/2 (p) ; param-approx 1/2 template=h.tmpl\n", {}, false, loader);
  EXPECT_TRUE(check_derivation(d).valid);
  Derivation t = parse_derivation(tmpl, {}, false, {}, Parameter::Nu);
  std::uint64_t n = approx_nu_min(Rational(1, 2));
  EXPECT_EQ(n, 2U);
  for (std::uint64_t nu : {n, n + 1, n + 7}) EXPECT_TRUE(check_derivation(instantiate_template(t, nu)).valid) << nu;
}

TEST(Parametric, TemplateErrors) {
  auto loader = memory({{"bad.tmpl", "1. v -> v ; ax p\n"}});
  try {
    parse_derivation("1. q -> Pr~ 1 (p) ; param-approx 1 template=bad.tmpl\n", {}, false, loader);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Template);
  }
  // thresholds that can leave [0,1] are rejected
  Derivation t = parse_derivation("1. Pr>= 3/v (p) -> Pr>= 3/v (p) ; ax p\n", {}, false, {}, Parameter::Nu);
  EXPECT_FALSE(check_parametric_step(t, parse_formula("q -> Pr~ 1/2 (p)"), Justification::Kind::ApproxIntro,
                                     Rational(1, 2)).valid);
}

TEST(Parametric, Archimedean) {
  EXPECT_TRUE(check_text(read_data("arch.proof")).valid);
  auto loader = memory({{"a.tmpl", "1. r & ~r -> ~Pr= sigma (p) ; ax p\n"}});
  Derivation bad = parse_derivation("1. r & ~r -> r ; param-arch template=a.tmpl\n", {}, false, loader);
  EXPECT_FALSE(check_derivation(bad).valid);
  Derivation wrong = parse_derivation("1. q -> q & ~q ; param-arch template=a.tmpl\n", {}, false, loader);
  EXPECT_FALSE(check_derivation(wrong).valid);
}
