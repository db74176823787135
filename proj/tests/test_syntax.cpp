#include <gtest/gtest.h>

#include "oracles.hpp"
#include "wtt/sexpr.hpp"
#include "wtt/term.hpp"

using namespace wtt;

TEST(Syntax, ParsesBindersWithNamedScope) {
  Term t = parse_term("(lam (a A) a)", {"A"});
  EXPECT_EQ(t, lam(var(0), var(0)));
  EXPECT_EQ(parse_term(print_term(t, {"A"}), {"A"}), t);
}

TEST(Syntax, ParsesJWithTwoBinderMotive) {
  Term t = parse_term("(J A x ((y q) (app (app P y) q)) d x (refl x))");
  ASSERT_EQ(t->kind, Kind::J);
  EXPECT_EQ(t->kids[2], app(app(gen("P"), var(1)), var(0)));
  // A list headed by a name is a generator spine.
  EXPECT_EQ(parse_term("(P y q)"), gen("P", {gen("y"), gen("q")}));
  EXPECT_EQ(t->kids[5], refl(gen("x")));
}

TEST(Syntax, UniverseAndLifts) {
  EXPECT_EQ(parse_term("(U 2)"), univ(2));
  EXPECT_EQ(parse_term("(lower (lift x))"), lower(lift(gen("x"))));
  EXPECT_EQ(parse_term("(Lift A)"), lift_ty(gen("A")));
}

TEST(Syntax, RejectsMalformedInput) {
  EXPECT_THROW(parse_term("(lam (a A) a"), SyntaxError);
  EXPECT_THROW(parse_term("a)"), SyntaxError);
  EXPECT_THROW(parse_term(""), SyntaxError);
  EXPECT_THROW(parse_term("a b"), SyntaxError);
  try {
    parse_term("(Id A\n  x");
    FAIL() << "expected a syntax error";
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 1);
    EXPECT_EQ(e.column(), 1);
  }
}

TEST(Syntax, CommentsAreSkipped) {
  auto all = read_sexprs("-- header\n(refl x) -- trailing\n(U 0)\n");
  ASSERT_EQ(all.size(), 2u);
  EXPECT_EQ(all[1].line, 3);
}

TEST(Syntax, HashConsingSharesNodes) {
  Term a = id(gen("A"), gen("x"), gen("y"));
  Term b = id(gen("A"), gen("x"), gen("y"));
  EXPECT_EQ(a.get(), b.get());
}

TEST(Syntax, PrintParseRoundTripOnEnumeratedTerms) {
  std::size_t n = 0;
  for (const auto& text : oracle::law_signatures()) {
    Signature sig = oracle::signature_from(text);
    for (const auto& ft : enumerate(sig, 3).terms) {
      for (const Term& t : {ft.term, ft.type, ft.key}) {
        ASSERT_EQ(parse_term(print_term(t)), t) << print_term(t);
        ++n;
      }
    }
  }
  EXPECT_GT(n, 500u);
}

TEST(Syntax, PrintParseRoundTripOnOuterTerms) {
  Signature sig = oracle::load_signature("sig/demo.sig");
  auto terms = oracle::two_level_samples(sig, 2);
  ASSERT_FALSE(terms.empty());
  for (const Term& t : terms) EXPECT_EQ(parse_term(print_term(t)), t) << print_term(t);
}

TEST(Syntax, PrintingAFreeVariableNeedsAName) {
  EXPECT_THROW(print_term(var(0)), ScopeError);
  EXPECT_EQ(print_term(var(0), {"z"}), "z");
}

TEST(Substitution, WeakenThenInstantiateIsIdentity) {
  for (const auto& text : oracle::law_signatures()) {
    Signature sig = oracle::signature_from(text);
    for (const auto& ft : enumerate(sig, 3).terms)
      EXPECT_EQ(substitute(weaken(ft.key, 1), {univ(0)}), ft.key);
  }
}

TEST(Substitution, ReplacesTheBoundVariableUnderBinders) {
  Term body = lam(var(0), id(var(1), var(0), var(0)));  // over one free variable
  Term r = substitute(body, {gen("A")});
  EXPECT_EQ(r, lam(gen("A"), id(gen("A"), var(0), var(0))));
}

TEST(Substitution, StrengtheningFailsOnOccurrence) {
  Term out;
  EXPECT_FALSE(try_strengthen(id(var(0), var(1), var(1)), 1, 0, out));
  EXPECT_TRUE(try_strengthen(id(var(1), var(2), var(2)), 1, 0, out));
  EXPECT_EQ(out, id(var(0), var(1), var(1)));
}
