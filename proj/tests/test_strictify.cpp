#include <gtest/gtest.h>

#include "cli.hpp"
#include "oracles.hpp"
#include "wtt/sexpr.hpp"
#include "wtt/strictify.hpp"

using namespace wtt;

namespace {

Signature jbeta_marked() { return validate(with_jbeta_marks(parse_signature(oracle::read_file(oracle::corpus_path("sig/jbeta.sig"))))); }

}  // namespace

TEST(Strictify, RecordsTheRewritesOfAStrongCheck) {
  Signature sig = jbeta_marked();
  StrictDerivation d = record_derivation(sig, {}, gen("e"), parse_term("(Q (J A x ((y q) (P y q)) d x (refl x)))"));
  EXPECT_FALSE(d.trace.empty());
  EXPECT_TRUE(replay(sig, d));
}

TEST(Strictify, RejectsWhatStrongModeRejects) {
  Signature sig = jbeta_marked();
  EXPECT_THROW(record_derivation(sig, {}, gen("e"), parse_term("(Q x)")), TypeError);
}

TEST(Strictify, LiftsAJBetaConversion) {
  Signature sig = jbeta_marked();
  StrictDerivation d = record_derivation(sig, {}, gen("e"), parse_term("(Q (J A x ((y q) (P y q)) d x (refl x)))"));
  LiftResult r = strictify_translate(sig, d);
  ASSERT_TRUE(r.lifted()) << r.reason;
  EXPECT_TRUE(r.round_trip);
  EXPECT_GE(r.transports, 1u);
  EXPECT_EQ(r.witness, refl(r.t0));
  Checker weak(sig, Mode::weak());
  Context c0 = r.ctx0;
  EXPECT_NO_THROW(weak.check(c0, r.t0, r.type0));
  EXPECT_NE(r.t0, gen("e"));  // a transport was inserted
}

TEST(Strictify, WeakDerivationsLiftToThemselves) {
  Signature sig = jbeta_marked();
  StrictDerivation d = record_derivation(sig, {}, gen("d"), parse_term("(P x (refl x))"));
  EXPECT_TRUE(d.trace.empty());
  LiftResult r = strictify_translate(sig, d);
  ASSERT_TRUE(r.lifted());
  EXPECT_EQ(r.t0, gen("d"));
  EXPECT_EQ(r.transports, 0u);
}

TEST(Strictify, RewritePathEndsInTheNormalForm) {
  Signature sig = jbeta_marked();
  Context ctx;
  Path p = rewrite_path(sig, ctx, parse_term("(Q (J A x ((y q) (P y q)) d x (refl x)))"));
  EXPECT_EQ(p.rhs, parse_term("(Q d)"));
  Checker weak(sig, Mode::weak());
  EXPECT_NO_THROW(weak.check(ctx, p.proof, id(p.type, p.lhs, p.rhs)));
}

struct CorpusFile {
  const char* sig;
  const char* terms;
};

void PrintTo(const CorpusFile& cf, std::ostream* os) { *os << cf.terms; }

class StrictifyCorpus : public ::testing::TestWithParam<CorpusFile> {};

TEST_P(StrictifyCorpus, EveryJudgementLifts) {
  const auto& cf = GetParam();
  auto in = cli::load_strictify_input(oracle::corpus_path(cf.sig), oracle::corpus_path(cf.terms), false);
  ASSERT_FALSE(in.entries.empty());
  for (const auto& e : in.entries) {
    StrictDerivation d = record_derivation(in.sig, e.ctx, e.term, e.type, in.marks);
    LiftResult r = strictify_translate(in.sig, d);
    EXPECT_TRUE(r.lifted()) << cf.terms << ":" << e.line << " " << r.reason;
    EXPECT_TRUE(r.round_trip) << cf.terms << ":" << e.line;
  }
}

INSTANTIATE_TEST_SUITE_P(Corpus, StrictifyCorpus,
                         ::testing::Values(CorpusFile{"sig/jbeta.sig", "strictify/jbeta.wtt"},
                                           CorpusFile{"sig/plus.sig", "strictify/plus.wtt"},
                                           CorpusFile{"sig/hofmann.sig", "strictify/hofmann.wtt"},
                                           CorpusFile{"sig/uip.sig", "strictify/uip.wtt"}),
                         [](const auto& info) {
                           std::string s = info.param.terms;
                           return s.substr(s.find('/') + 1, s.find('.') - s.find('/') - 1);
                         });

TEST(Strictify, DependentPositionsAreUnsupported) {
  for (CorpusFile cf : {CorpusFile{"sig/uip.sig", "strictify/limits_uip.wtt"},
                        CorpusFile{"sig/hofmann.sig", "strictify/limits_reflection.wtt"}}) {
    auto in = cli::load_strictify_input(oracle::corpus_path(cf.sig), oracle::corpus_path(cf.terms), false);
    ASSERT_EQ(in.entries.size(), 1u);
    const auto& e = in.entries[0];
    StrictDerivation d = record_derivation(in.sig, e.ctx, e.term, e.type, in.marks);
    EXPECT_THROW(strictify_translate(in.sig, d), UnsupportedMark) << cf.terms;
  }
}

TEST(Strictify, WeakLiftingOverAFragment) {
  LiftingReport r = check_weak_lifting(jbeta_marked(), 2);
  EXPECT_GT(r.terms, 0u);
  EXPECT_TRUE(r.ok()) << (r.failures.empty() ? "" : r.failures.front());
  EXPECT_EQ(r.unknown, 0u);
}
