#include <gtest/gtest.h>

#include "oracles.hpp"
#include "wtt/config.hpp"
#include "wtt/sexpr.hpp"
#include "wtt/typechecker.hpp"

using namespace wtt;

namespace {

Signature point() { return oracle::signature_from("gen A : U 0\ngen x : A\ngen y : A\n"); }

// The corpus J-beta signature with the J-beta family marked.
Signature jbeta_sig() {
  return validate(with_jbeta_marks(parse_signature(oracle::read_file(oracle::corpus_path("sig/jbeta.sig")))));
}

const Term kJ = parse_term("(J A x ((y q) (P y q)) d x (refl x))");
const Term kJBeta = parse_term("(J-beta A x ((y q) (P y q)) d)");

}  // namespace

TEST(Kernel, BetaReducesInWeakMode) {
  Signature sig = point();
  Checker chk(sig, Mode::weak());
  Context ctx;
  EXPECT_EQ(chk.whnf(ctx, parse_term("(app (lam (a A) a) x)")), gen("x"));
}

TEST(Kernel, LowerLiftIsConvertible) {
  Signature sig = point();
  Checker chk(sig, Mode::weak());
  Context ctx;
  EXPECT_TRUE(chk.convertible(ctx, parse_term("(lower (lift x))"), gen("x")));
  EXPECT_EQ(chk.infer(ctx, parse_term("(lift x)")), lift_ty(gen("A")));
}

TEST(Kernel, JOnReflIsStuckInWeakMode) {
  Signature sig = jbeta_sig();
  Checker chk(sig, Mode::weak());
  Context ctx;
  ASSERT_EQ(chk.infer(ctx, kJ), parse_term("(P x (refl x))"));
  EXPECT_EQ(chk.whnf(ctx, kJ), kJ);
  EXPECT_EQ(chk.conv(ctx, kJ, gen("d")), Conv::No);
  EXPECT_EQ(chk.conv(ctx, kJBeta, refl(gen("d"))), Conv::No);
}

TEST(Kernel, JOnReflComputesWithJBetaMarked) {
  Signature sig = jbeta_sig();
  Checker chk(sig, Mode::strong());
  Context ctx;
  EXPECT_EQ(chk.whnf(ctx, kJ), gen("d"));
  EXPECT_TRUE(chk.convertible(ctx, kJBeta, refl(gen("d"))));
}

TEST(Kernel, StrongModeRestrictedToNoMarksIsWeak) {
  Signature sig = jbeta_sig();
  Checker chk(sig, Mode::strong({""}));
  Context ctx;
  EXPECT_EQ(chk.conv(ctx, kJ, gen("d")), Conv::No);
}

TEST(Kernel, JBetaRuleIsOriented) {
  RuleSet rs = orient_marks(validate(jbeta_signature()));
  ASSERT_FALSE(rs.rules.empty());
  EXPECT_TRUE(rs.unoriented.empty());
  EXPECT_EQ(rs.rules.front().lhs->kind, Kind::J);
}

TEST(Kernel, TypeMismatchReportsBothSides) {
  Signature sig = point();
  Checker chk(sig, Mode::weak());
  Context ctx;
  try {
    chk.check(ctx, gen("x"), parse_term("(Id A x x)"));
    FAIL() << "expected a mismatch";
  } catch (const TypeError& e) {
    EXPECT_EQ(e.code(), ErrorCode::TypeMismatch);
    EXPECT_EQ(e.lhs(), "A");
    EXPECT_EQ(e.rhs(), "(Id A x x)");
  }
}

TEST(Kernel, ErrorCodes) {
  Signature sig = point();
  Checker chk(sig, Mode::weak());
  Context ctx;
  auto code_of = [&](const std::string& src) {
    try {
      chk.infer(ctx, parse_term(src));
    } catch (const TypeError& e) {
      return e.code();
    }
    ADD_FAILURE() << src << " was accepted";
    return ErrorCode::Undecided;
  };
  EXPECT_EQ(code_of("nope"), ErrorCode::UnknownName);
  EXPECT_EQ(code_of("(reflO x)"), ErrorCode::LayerMismatch);
  EXPECT_EQ(code_of("(app x x)"), ErrorCode::NotTypeable);
  EXPECT_EQ(code_of("(app (lam (a A) a) A)"), ErrorCode::TypeMismatch);
  EXPECT_EQ(code_of("(U 3)"), ErrorCode::LevelOverflow);
}

TEST(Kernel, NoEtaForPi) {
  Signature sig = oracle::signature_from("gen A : U 0\ngen f : (Pi (a A) A)\n");
  Checker chk(sig, Mode::weak());
  Context ctx;
  EXPECT_EQ(chk.conv(ctx, parse_term("(lam (a A) (app f a))"), gen("f")), Conv::No);
}

TEST(Kernel, FunextConstantsDoNotReduce) {
  Signature sig = oracle::signature_from("gen A : U 0\ngen f : (Pi (a A) A)\n");
  Checker chk(sig, Mode::weak());
  Context ctx;
  Term fb = parse_term("(funext-beta f)");
  chk.infer(ctx, fb);
  EXPECT_EQ(chk.whnf(ctx, fb), fb);
}

TEST(Kernel, TwoLevelConservativelyExtendsWeak) {
  for (const auto& text : oracle::law_signatures()) {
    Signature sig = oracle::signature_from(text);
    Checker two(sig, Mode::two_level());
    Context ctx;
    for (const auto& ft : enumerate(sig, 3).terms) EXPECT_NO_THROW(two.check(ctx, ft.term, ft.type));
  }
}

TEST(Kernel, WeakConversionIsDecidedAndAnEquivalence) {
  Signature sig = oracle::signature_from(oracle::law_signatures()[2]);
  Fragment f = enumerate(sig, 3);
  Checker chk(sig, Mode::weak());
  Context ctx;
  std::size_t pairs = 0;
  for (const Term& ty : f.types()) {
    const auto& members = f.of_type(ty);
    for (std::size_t a : members) {
      ASSERT_EQ(chk.conv(ctx, f[a].term, f[a].term), Conv::Yes);
      for (std::size_t b : members) {
        Conv ab = chk.conv(ctx, f[a].term, f[b].term);
        ASSERT_NE(ab, Conv::Undecided);
        ASSERT_EQ(ab, chk.conv(ctx, f[b].term, f[a].term));
        // Distinct fragment entries are distinct up to conversion.
        ASSERT_EQ(ab == Conv::Yes, a == b);
        ++pairs;
      }
    }
  }
  EXPECT_GT(pairs, 100u);
}

TEST(Kernel, ConversionIsACongruence) {
  Signature sig = point();
  Checker chk(sig, Mode::weak());
  Context ctx;
  Term x = gen("x"), x2 = parse_term("(lower (lift x))"), a = gen("A");
  Term a2 = parse_term("(app (lam (T (U 0)) T) A)");
  ASSERT_TRUE(chk.convertible(ctx, x, x2));
  ASSERT_TRUE(chk.convertible(ctx, a, a2));
  EXPECT_TRUE(chk.convertible(ctx, refl(x), refl(x2)));
  EXPECT_TRUE(chk.convertible(ctx, id(a, x, gen("y")), id(a2, x2, gen("y"))));
  EXPECT_TRUE(chk.convertible(ctx, lam(a, x), lam(a2, x2)));
  EXPECT_TRUE(chk.convertible(ctx, lift(x), lift(x2)));
  EXPECT_TRUE(chk.convertible(ctx, pi(a, a), pi(a2, a2)));
}

TEST(KernelLaws, HoldOnDepthThreeTerms) {
  auto samples = oracle::law_samples(3);
  std::vector<Signature> sigs;
  for (const auto& s : oracle::law_signatures()) sigs.push_back(oracle::signature_from(s));
  ASSERT_GE(samples.size(), 500u);
  for (const auto& s : samples) {
    auto fails = oracle::check_laws(sigs[s.sig], s);
    for (const auto& f : fails) ADD_FAILURE() << f.law << " on " << f.term << ": " << f.detail;
  }
}

TEST(KernelLaws, DetectAMissingReduction) {
  // A sample claiming the wrong reduct must be reported.
  Signature sig = point();
  oracle::LawSample s{oracle::LawSample::Kind::Beta, 0, parse_term("(app (lam (a A) a) x)"), gen("A"), gen("y")};
  auto fails = oracle::check_laws(sig, s);
  ASSERT_EQ(fails.size(), 1u);
  EXPECT_EQ(fails[0].law, "strict reduction");
}

TEST(Config, ParsesKeysAndRejectsUnknownOnes) {
  Config c = parse_config("# comment\nmax_level = 4\nenum_depth=2\nrewrite_budget = 50\nmode = strong\n");
  EXPECT_EQ(c.max_level, 4u);
  EXPECT_EQ(c.enum_depth, 2u);
  EXPECT_EQ(c.rewrite_budget, 50u);
  EXPECT_EQ(c.mode, "strong");
  EXPECT_THROW(parse_config("colour = blue\n"), ConfigError);
  EXPECT_THROW(parse_config("max_level = -1\n"), ConfigError);
  EXPECT_THROW(parse_config("mode = extensional\n"), ConfigError);
  EXPECT_THROW(parse_config("max_level\n"), ConfigError);
  EXPECT_THROW(load_config_file("/nonexistent/wtt.conf"), ConfigError);
}

TEST(Config, MaxLevelBoundsUniverses) {
  Signature sig = point();
  Config cfg;
  cfg.max_level = 1;
  Checker chk(sig, Mode::weak(), cfg);
  Context ctx;
  EXPECT_NO_THROW(chk.infer(ctx, univ(0)));
  EXPECT_THROW(chk.infer(ctx, univ(1)), TypeError);
}
