#include <gtest/gtest.h>

#include "oracles.hpp"
#include "wtt/fragment.hpp"
#include "wtt/sexpr.hpp"
#include "wtt/signature.hpp"

using namespace wtt;

TEST(Signature, ParsesGeneratorsAndMarks) {
  Signature s = parse_signature("-- demo\ngen A : U 0\ngen x : A\ngen y : A\ngen p : Id A x y\nmark p\n");
  ASSERT_EQ(s.gens.size(), 4u);
  ASSERT_EQ(s.marks.size(), 1u);
  EXPECT_EQ(s.gens[3].type, parse_term("(Id A x y)"));
  EXPECT_EQ(s.gens[1].line, 3);
  EXPECT_FALSE(s.marks[0].explicit_term);
}

TEST(Signature, ValidationRecordsMarkEndpoints) {
  Signature s = oracle::load_signature("sig/demo.sig");
  ASSERT_TRUE(s.validated);
  const MarkDecl* m = s.find_mark("p");
  ASSERT_NE(m, nullptr);
  EXPECT_EQ(m->carrier, gen("A"));
  EXPECT_EQ(m->lhs, gen("x"));
  EXPECT_EQ(m->rhs, gen("y"));
}

TEST(Signature, ParametrizedGenerators) {
  Signature s = oracle::load_signature("sig/family.sig");
  const GenDecl* b = s.find_gen("B");
  ASSERT_NE(b, nullptr);
  ASSERT_EQ(b->params.size(), 1u);
  EXPECT_EQ(b->level, 1);
}

TEST(Signature, PrintParseRoundTrip) {
  for (const char* rel : {"sig/demo.sig", "sig/plus.sig", "sig/uip.sig", "sig/jbeta_explicit.sig"}) {
    Signature s = parse_signature(oracle::read_file(oracle::corpus_path(rel)));
    Signature again = parse_signature(print_signature(s));
    ASSERT_EQ(again.gens.size(), s.gens.size()) << rel;
    for (std::size_t i = 0; i < s.gens.size(); ++i) {
      EXPECT_EQ(again.gens[i].name, s.gens[i].name);
      EXPECT_EQ(again.gens[i].type, s.gens[i].type);
      EXPECT_TRUE(tele_equal(again.gens[i].params, s.gens[i].params));
    }
    ASSERT_EQ(again.marks.size(), s.marks.size()) << rel;
  }
}

namespace {

std::string validation_error(const std::string& text) {
  try {
    validate(parse_signature(text));
  } catch (const SignatureError& e) {
    return e.declaration();
  }
  return "<accepted>";
}

}  // namespace

TEST(Signature, RejectsBadDeclarations) {
  EXPECT_EQ(validation_error("gen A : U 0\ngen x : B\n"), "x");
  EXPECT_EQ(validation_error("gen A : U 0\ngen A : U 0\n"), "A");
  EXPECT_EQ(validation_error("gen A : U 0\ngen x : A\nmark x\n"), "x");  // not an equality
  EXPECT_EQ(validation_error("gen A : U 0\ngen x : A\nmark m : (refl y)\n"), "m");
  EXPECT_THROW(parse_signature("gen J : U 0\n"), SyntaxError);
  EXPECT_THROW(parse_signature("gen A U 0\n"), SyntaxError);
  EXPECT_THROW(parse_signature("axiom A : U 0\n"), SyntaxError);
}

TEST(Signature, JBetaFixtures) {
  Signature s = validate(jbeta_signature());
  ASSERT_EQ(s.marks.size(), 1u);
  EXPECT_EQ(s.marks[0].lhs->kind, Kind::J);
  Signature many = validate(with_jbeta_marks(parse_signature("gen A : U 0\n")));
  EXPECT_EQ(many.marks.size(), 4u);
  for (const char* n : {"jbeta_0_0", "jbeta_0_1", "jbeta_1_0", "jbeta_1_1"}) EXPECT_NE(many.find_mark(n), nullptr);
}

TEST(Enumerate, DepthOneIsVariablesUniverseAndConstants) {
  Signature s = oracle::load_signature("sig/demo.sig");
  Fragment f = enumerate(s, 1);
  std::set<std::string> got;
  for (const auto& t : f.terms) got.insert(print_term(t.key));
  EXPECT_EQ(got, (std::set<std::string>{"(U 0)", "A", "x", "y", "p"}));
}

TEST(Enumerate, IsMonotoneInDepthAndDeterministic) {
  Signature s = oracle::load_signature("sig/demo.sig");
  Fragment f2 = enumerate(s, 2), f3 = enumerate(s, 3), again = enumerate(s, 3);
  ASSERT_LT(f2.size(), f3.size());
  for (std::size_t i = 0; i < f2.size(); ++i) EXPECT_EQ(f2[i].key, f3[i].key);
  ASSERT_EQ(f3.size(), again.size());
  for (std::size_t i = 0; i < f3.size(); ++i) EXPECT_EQ(f3[i].key, again[i].key);
}

TEST(Enumerate, TermsAreWellTypedAndDistinct) {
  Signature s = oracle::load_signature("sig/family.sig");
  Fragment f = enumerate(s, 3);
  Checker chk(s, Mode::weak());
  Context ctx;
  std::set<const Node*> keys;
  for (const auto& t : f.terms) {
    EXPECT_EQ(chk.normalize(ctx, chk.infer(ctx, t.term)), t.type);
    EXPECT_TRUE(keys.insert(t.key.get()).second);
    EXPECT_EQ(f.find(t.key), static_cast<std::size_t>(&t - f.terms.data()));
  }
}

TEST(Enumerate, RespectsTheCap) {
  Signature s = oracle::load_signature("sig/plus.sig");
  EnumOptions opt;
  opt.cfg.fragment_cap = 20;
  EXPECT_THROW(enumerate(s, 3, {}, opt), FragmentBudget);
}

TEST(Enumerate, TelescopeInstancesFollowFragmentOrder) {
  Signature s = oracle::load_signature("sig/family.sig");
  Fragment f = enumerate(s, 2);
  Checker chk(s, Mode::weak());
  const GenDecl* b = s.find_gen("B");
  auto inst = telescope_instances(chk, f, b->params);
  ASSERT_FALSE(inst.empty());
  for (const auto& args : inst) {
    ASSERT_EQ(args.size(), 1u);
    Context ctx;
    EXPECT_EQ(chk.normalize(ctx, chk.infer(ctx, args[0])), gen("A"));
  }
}
