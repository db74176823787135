#include <gtest/gtest.h>

#include "oracles.hpp"
#include "wtt/sexpr.hpp"
#include "wtt/two_level.hpp"

using namespace wtt;

TEST(TwoLevel, OuterFormersTypecheck) {
  Signature sig = oracle::load_signature("sig/demo.sig");
  Checker chk(sig, Mode::two_level());
  Context ctx;
  EXPECT_EQ(chk.infer(ctx, parse_term("(reflO x)")), parse_term("(IdO (tm 0 A) x x)"));
  EXPECT_EQ(chk.infer(ctx, parse_term("(hat p)")), parse_term("(IdO (tm 0 A) x y)"));
  EXPECT_NO_THROW(chk.check(ctx, parse_term("(lamO (a A) (reflO a))"), parse_term("(PiO (a A) (IdO (tm 0 A) a a))")));
  EXPECT_THROW(chk.infer(ctx, parse_term("(IdO (tm 0 A) x x)")), TypeError);
}

TEST(TwoLevel, OuterBetaIsStrict) {
  Signature sig = oracle::load_signature("sig/demo.sig");
  Checker chk(sig, Mode::two_level());
  Context ctx;
  EXPECT_TRUE(chk.convertible(ctx, parse_term("(appO (lamO (a A) (reflO a)) x)"), parse_term("(reflO x)")));
}

TEST(TwoLevel, OuterJIsWeakOnlyWithoutErasure) {
  Signature sig = oracle::load_signature("sig/demo.sig");
  Checker chk(sig, Mode::two_level());
  Context ctx;
  Term jo = parse_term("(JO (tm 0 A) x ((v r) (tm 0 A)) x x (reflO x))");
  chk.infer(ctx, jo);
  EXPECT_EQ(chk.conv(ctx, jo, gen("x")), Conv::No);
  Checker erased(sig, Mode::erased());
  EXPECT_EQ(erased.conv(ctx, jo, gen("x")), Conv::Yes);
}

TEST(TwoLevel, SingletonContexts) {
  Signature sig = oracle::load_signature("sig/demo.sig");
  Checker chk(sig, Mode::two_level());
  Context ctx;
  ctx.push_singleton(parse_term("(tm 0 A)"), gen("x"), "w", "e");
  EXPECT_NO_THROW(chk.check_context(ctx));
  EXPECT_EQ(chk.infer(ctx, var(0)), id_o(tm_code(0, gen("A")), gen("x"), var(1)));
  Context flat = collapse_context(sig, ctx);
  ASSERT_EQ(flat.size(), 2u);
  EXPECT_EQ(flat.raw_types().back(), id(gen("A"), gen("x"), var(0)));
}

TEST(Collapse, IsIdentityOnInnerTerms) {
  for (const auto& text : oracle::law_signatures()) {
    Signature sig = oracle::signature_from(text);
    for (const auto& ft : enumerate(sig, 3).terms) {
      EXPECT_EQ(collapse_to_inner(sig, ft.term), ft.term);
      EXPECT_EQ(collapse_to_inner(sig, ft.type), ft.type);
    }
  }
}

TEST(Collapse, PreservesTyping) {
  std::size_t mixed = 0, total = 0;
  for (const char* rel : {"sig/demo.sig", "sig/family.sig"}) {
    Signature sig = oracle::load_signature(rel);
    for (const Term& t : oracle::two_level_samples(sig, 2)) {
      auto r = oracle::check_collapse(sig, t);
      EXPECT_TRUE(r.ok) << print_term(t) << ": " << r.detail;
      mixed += r.pi_mixed;
      ++total;
    }
  }
  EXPECT_GE(total, 100u);
  EXPECT_GT(mixed, 0u);
}

TEST(Collapse, PiOTakesTheLargerLevel) {
  Signature sig = oracle::load_signature("sig/demo.sig");
  auto r = oracle::check_collapse(sig, parse_term("(lamO (a A) (U 0))"));
  EXPECT_TRUE(r.ok) << r.detail;
  EXPECT_TRUE(r.pi_mixed);
  Checker inner(sig, Mode::weak());
  Context ctx;
  EXPECT_EQ(inner.type_level(ctx, collapse_to_inner(sig, parse_term("(PiO (a A) (tm 1 (U 0)))"))), 1u);
}

TEST(Collapse, HatBecomesTheMarkTerm) {
  Signature sig = oracle::load_signature("sig/demo.sig");
  EXPECT_EQ(collapse_to_inner(sig, parse_term("(hat p)")), gen("p"));
  EXPECT_EQ(collapse_to_inner(sig, parse_term("(IdO (tm 0 A) x y)")), parse_term("(Id A x y)"));
}

TEST(Erase, MarkedOuterEqualityHolds) {
  Signature sig = oracle::load_signature("sig/demo.sig");
  Context ctx;
  // With p strict, transporting along hat p is the identity.
  Term t = parse_term("(JO (tm 0 A) x ((v r) (tm 0 A)) x y (hat p))");
  EraseResult r = erase_to_strict(sig, {"p"}, ctx, t, gen("A"));
  EXPECT_GE(r.outer_uses, 1u);
}

TEST(Erase, ReportsTheFailingObligation) {
  Signature sig = oracle::load_signature("sig/demo.sig");
  Context ctx;
  // Without marks, reflO x cannot prove IdO x y.
  Term t = parse_term("(reflO x)");
  try {
    erase_to_strict(sig, {""}, ctx, t, parse_term("(IdO (tm 0 A) x y)"));
    FAIL() << "expected an obligation failure";
  } catch (const ObligationFailed& e) {
    EXPECT_FALSE(e.obligation().origin.empty());
  }
}

TEST(Acyclicity, EmptyMarkSignaturesAreCertified) {
  for (const char* rel : {"sig/empty.sig", "sig/point.sig", "sig/family.sig"}) {
    for (unsigned d = 1; d <= 2; ++d) {
      AcyclicityVerdict v = acyclicity_search(oracle::load_signature(rel), d);
      EXPECT_TRUE(v.certified()) << rel << " depth " << d << ": " << v.reason;
      EXPECT_TRUE(v.uncontracted.empty());
      EXPECT_EQ(v.table.size(), v.loops.size());
    }
  }
}

TEST(Acyclicity, DepthZeroIsUnknown) {
  AcyclicityVerdict v = acyclicity_search(oracle::load_signature("sig/point.sig"), 0);
  EXPECT_FALSE(v.certified());
}

TEST(Acyclicity, TwoIndependentMarksAreNeverCertified) {
  AcyclicityVerdict v = acyclicity_search(oracle::load_signature("sig/two_marks.sig"), 3);
  EXPECT_FALSE(v.certified());
  EXPECT_FALSE(v.uncontracted.empty());
}

TEST(Acyclicity, ContractionsTypecheck) {
  Signature sig = oracle::load_signature("sig/demo.sig");
  AcyclicityVerdict v = acyclicity_search(sig, 2);
  ASSERT_FALSE(v.table.empty());
  Checker chk(sig, Mode::two_level());
  Context ctx;
  for (const auto& c : v.table) {
    const Path& loop = v.words[c.loop].path;
    Term ty = id_o(id_o(loop.type, loop.lhs, loop.lhs), loop.proof, refl_o(loop.lhs));
    EXPECT_NO_THROW(chk.check(ctx, c.proof, ty)) << print_term(loop.proof);
  }
}

TEST(Acyclicity, InducedCongruenceFollowsTheWords) {
  Signature sig = oracle::load_signature("sig/demo.sig");
  AcyclicityVerdict v = acyclicity_search(sig, 2);
  Congruence c = induced_congruence(sig, v);
  std::size_t x = c.fragment.find(gen("x")), y = c.fragment.find(gen("y"));
  ASSERT_NE(x, Fragment::npos);
  ASSERT_NE(y, Fragment::npos);
  EXPECT_TRUE(c.same(x, y));
}
