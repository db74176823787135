#include <gtest/gtest.h>

#include "oracles.hpp"
#include "wtt/certify.hpp"
#include "wtt/derived.hpp"
#include "wtt/paths.hpp"
#include "wtt/sexpr.hpp"

using namespace wtt;

namespace {

Signature paths_sig() {
  return oracle::signature_from(
      "gen A : U 0\ngen x : A\ngen y : A\ngen z : A\ngen w : A\n"
      "gen p : (Id A x y)\ngen q : (Id A y z)\ngen r : (Id A z w)\n"
      "gen B (a A) : U 0\ngen b : (B x)\n");
}

Path named(const char* name, const char* from, const char* to) {
  return Path{gen("A"), gen(from), gen(to), gen(name)};
}

// Checks proof : Id type lhs rhs in Weak mode.
void expect_path(Checker& chk, const Path& p) {
  Context ctx;
  EXPECT_NO_THROW(chk.check(ctx, p.proof, id(p.type, p.lhs, p.rhs))) << print_term(p.proof);
}

}  // namespace

TEST(Derived, TransportHasTheFamilyAtTheEndpoint) {
  Signature sig = paths_sig();
  Checker chk(sig, Mode::weak());
  Context ctx;
  Term t = transport(Layer::Inner, gen("A"), gen("x"), gen("y"), gen("B", {var(0)}), gen("p"), gen("b"));
  EXPECT_NO_THROW(chk.check(ctx, t, gen("B", {gen("y")})));
  EXPECT_THROW(chk.check(ctx, t, gen("B", {gen("x")})), TypeError);
}

TEST(Derived, GroupoidOperationsTypecheck) {
  Signature sig = paths_sig();
  Checker chk(sig, Mode::weak());
  Path p = named("p", "x", "y"), q = named("q", "y", "z"), r = named("r", "z", "w");
  expect_path(chk, compose(Layer::Inner, p, q));
  expect_path(chk, inverse(Layer::Inner, p));
  expect_path(chk, chain(Layer::Inner, {p, q, r}));
  expect_path(chk, right_unit(Layer::Inner, p));
  expect_path(chk, left_unit(Layer::Inner, p));
  expect_path(chk, right_inverse(Layer::Inner, p));
  expect_path(chk, left_inverse(Layer::Inner, p));
  expect_path(chk, inverse_inverse(Layer::Inner, p));
  expect_path(chk, associate(Layer::Inner, p, q, r));
  expect_path(chk, inverse_refl(Layer::Inner, gen("A"), gen("x")));
  expect_path(chk, jbeta_path(Layer::Inner, gen("A"), gen("x"), weaken(gen("A"), 2), gen("y")));
}

TEST(Derived, GroupoidLawBoundaries) {
  Path p = named("p", "x", "y"), q = named("q", "y", "z");
  Path ru = right_unit(Layer::Inner, p);
  EXPECT_EQ(ru.type, id(gen("A"), gen("x"), gen("y")));
  EXPECT_EQ(ru.rhs, gen("p"));
  Path inv = inverse(Layer::Inner, compose(Layer::Inner, p, q));
  EXPECT_EQ(inv.lhs, gen("z"));
  EXPECT_EQ(inv.rhs, gen("x"));
}

TEST(Derived, ApAlongAFunction) {
  Signature sig = oracle::signature_from("gen A : U 0\ngen f (a A) : A\ngen x : A\ngen y : A\ngen p : (Id A x y)\n");
  Checker chk(sig, Mode::weak());
  Path p = named("p", "x", "y");
  Path fp = ap(Layer::Inner, p, gen("f", {var(0)}), gen("A"));
  EXPECT_EQ(fp.lhs, gen("f", {gen("x")}));
  EXPECT_EQ(fp.rhs, gen("f", {gen("y")}));
  expect_path(chk, fp);
}

TEST(Derived, TransportRoundTripWitness) {
  Signature sig = paths_sig();
  Checker chk(sig, Mode::weak());
  expect_path(chk, witness_transport_roundtrip(gen("A"), gen("x"), gen("y"), gen("B", {var(0)}), gen("p"),
                                               gen("b")));
  expect_path(chk, witness_compose_refl(named("p", "x", "y")));
  expect_path(chk, witness_inverse_refl(gen("A"), gen("x")));
  expect_path(chk, witness_inverse_inverse(named("q", "y", "z")));
}

TEST(Certify, InputsAreDistinct) {
  ASSERT_GE(cert_input_count(), 50u);
  std::set<std::string> seen;
  for (std::size_t i = 0; i < cert_input_count(); ++i) seen.insert(cert_input(i).describe());
  EXPECT_EQ(seen.size(), cert_input_count());
}

TEST(Certify, RejectsUnknownNamesAndSizes) {
  EXPECT_THROW(certify_combinator("nope", 0), std::invalid_argument);
  EXPECT_THROW(certify_combinator("elim_tele", 0, {4, 1}), std::invalid_argument);
  EXPECT_THROW(certify_combinator("id_tele", 0, {0}), std::invalid_argument);
}

TEST(Certify, ElimTeleBetaSchedule) {
  auto even = elim_tele_beta_pairs(0);
  auto odd = elim_tele_beta_pairs(1);
  EXPECT_NE(std::find(even.begin(), even.end(), std::make_pair<std::size_t, std::size_t>(3, 3)), even.end());
  for (auto [n, m] : odd) EXPECT_LE(n + m, 4u);
}

class CombinatorSample : public ::testing::TestWithParam<std::string> {};

TEST_P(CombinatorSample, CertifiesOnSampledInputs) {
  const std::string name = GetParam();
  // elim_tele is covered at full size by the acceptance run; sample small sizes here.
  std::vector<std::size_t> sizes;
  if (name == "elim_tele") sizes = {2, 2};
  for (std::size_t i : {0u, 7u, 13u, 24u, 49u}) {
    CertOutcome o = certify_combinator(name, i, sizes);
    EXPECT_TRUE(o.ok) << name << " on input " << i << " [" << o.carrier << "]: " << o.error;
    EXPECT_GT(o.judgements, 0u);
  }
}

INSTANTIATE_TEST_SUITE_P(All, CombinatorSample, ::testing::ValuesIn(combinator_names()),
                         [](const auto& info) { return info.param; });

TEST(Certify, TelescopeSizesUpToThree) {
  for (std::size_t n = 1; n <= 3; ++n) {
    EXPECT_TRUE(certify_combinator("id_tele", 5, {n}).ok) << n;
    EXPECT_TRUE(certify_combinator("elim_tele", 5, {n, 1}).ok) << n;
  }
}
