#include <gtest/gtest.h>

#include "ipj/error.hpp"
#include "ipj/ispec.hpp"
#include "ipj/syntax.hpp"

using namespace ipj;

TEST(Spec, ConstantThreshold) {
  InteractionSpec s = load_spec("p : const 1\n");
  EFormula p = EFormula::atom("p");
  EXPECT_TRUE(s.member(p, 1, 2));
  EXPECT_FALSE(s.member(p, 0, 2));
  EXPECT_TRUE(s.in_I(p));
  EXPECT_FALSE(s.in_I(EFormula::atom("q")));
  EXPECT_FALSE(s.member(EFormula::atom("q"), 100, 0));
}

TEST(Spec, TableWithoutDefaultIsPartial) {
  InteractionSpec s = load_spec("# comment\nbox[P] p : table 0 -> 1 1 -> 3\n");
  EFormula a = parse_eformula("box[P] p");
  EXPECT_TRUE(s.member(a, 3, 1));
  EXPECT_FALSE(s.member(a, 2, 1));
  EXPECT_FALSE(s.member(a, 100, 2));
  EXPECT_FALSE(s.in_I(a));
  InteractionSpec t = load_spec("q : table 0 -> 1 default 4\n");
  EXPECT_TRUE(t.in_I(EFormula::atom("q")));
  EXPECT_TRUE(t.member(EFormula::atom("q"), 4, 9));
}

TEST(Spec, Polynomial) {
  InteractionSpec s = load_spec("x :[P] p : poly 1 0 2\n");
  EFormula a = parse_eformula("x :[P] p");
  EXPECT_EQ(s.threshold(a, 3), 19U);
  EXPECT_TRUE(s.in_I(a));
}

TEST(Spec, Monotone) {
  InteractionSpec s = load_spec("p : poly 2 1\nq : table 0 -> 0 2 -> 5\n");
  for (const auto& e : s.entries())
    for (std::uint64_t k = 0; k < 5; ++k)
      for (std::uint64_t m = 0; m < 10; ++m)
        if (s.member(e.formula, m, k)) {
          EXPECT_TRUE(s.member(e.formula, m + 1, k));
        }
}

TEST(Spec, Errors) {
  EXPECT_THROW(load_spec("p : const 1\np : const 2\n"), Error);
  EXPECT_THROW(load_spec("p : table 1 -> 2 1 -> 3\n"), SyntaxError);
  EXPECT_THROW(load_spec("p const 1\n"), SyntaxError);
  EXPECT_THROW(load_spec("Pr>= 1 (p) : const 1\n"), Error);
  try {
    load_spec("p : const 1\nq : const x\n");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 2U);
  }
}

TEST(Spec, RoundTrip) {
  InteractionSpec s = load_spec("p : const 1\nbox[P] q : table 0 -> 1 default 2\nr : poly 0 1\n");
  InteractionSpec t = load_spec(to_text(s));
  EXPECT_EQ(to_text(t), to_text(s));
}
