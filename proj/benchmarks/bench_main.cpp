#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

#include "wtt/certify.hpp"
#include "wtt/congruence.hpp"
#include "wtt/fragment.hpp"
#include "wtt/sexpr.hpp"
#include "wtt/signature.hpp"
#include "wtt/strictify.hpp"
#include "wtt/two_level.hpp"
#include "wtt/typechecker.hpp"

using namespace wtt;

namespace {

Signature corpus_sig(const char* rel) {
  std::ifstream in(std::string(WTT_CORPUS_DIR) + "/" + rel);
  std::stringstream ss;
  ss << in.rdbuf();
  return validate(parse_signature(ss.str()));
}

void BM_Enumerate(benchmark::State& st) {
  Signature sig = corpus_sig("sig/demo.sig");
  for (auto _ : st) benchmark::DoNotOptimize(enumerate(sig, static_cast<unsigned>(st.range(0))).size());
}
BENCHMARK(BM_Enumerate)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_InferFragment(benchmark::State& st) {
  Signature sig = corpus_sig("sig/family.sig");
  Fragment f = enumerate(sig, 3);
  Context ctx;
  for (auto _ : st) {
    Checker chk(sig, Mode::weak());
    for (const auto& t : f.terms) benchmark::DoNotOptimize(chk.infer(ctx, t.term));
  }
  st.SetItemsProcessed(static_cast<int64_t>(st.iterations() * f.size()));
}
BENCHMARK(BM_InferFragment)->Unit(benchmark::kMillisecond);

void BM_StrongJBeta(benchmark::State& st) {
  Signature sig = validate(with_jbeta_marks(parse_signature("gen A : U 0\ngen x : A\ngen P : (Pi (y A) (U 0))\n"
                                                            "gen d : (app P x)\n")));
  Term j = parse_term("(J A x ((y q) (app P y)) d x (refl x))");
  Context ctx;
  for (auto _ : st) {
    Checker chk(sig, Mode::strong());
    benchmark::DoNotOptimize(chk.whnf(ctx, j));
  }
}
BENCHMARK(BM_StrongJBeta);

void BM_GenerateQuotient(benchmark::State& st) {
  Signature sig = corpus_sig("sig/demo.sig");
  Fragment f = enumerate(sig, static_cast<unsigned>(st.range(0)));
  for (auto _ : st) {
    Congruence c = generate(sig, f, CongruenceMode::MarkedOnly);
    benchmark::DoNotOptimize(quotient(c).representative.size());
  }
}
BENCHMARK(BM_GenerateQuotient)->DenseRange(2, 3)->Unit(benchmark::kMillisecond);

void BM_Certify(benchmark::State& st) {
  const auto& name = combinator_names()[static_cast<std::size_t>(st.range(0))];
  st.SetLabel(name);
  for (auto _ : st) benchmark::DoNotOptimize(certify_combinator(name, 7).ok);
}
BENCHMARK(BM_Certify)->DenseRange(0, 10)->Unit(benchmark::kMillisecond);

void BM_Acyclicity(benchmark::State& st) {
  Signature sig = corpus_sig("sig/demo.sig");
  for (auto _ : st) benchmark::DoNotOptimize(acyclicity_search(sig, 2).certified());
}
BENCHMARK(BM_Acyclicity)->Unit(benchmark::kMillisecond);

void BM_Strictify(benchmark::State& st) {
  Signature sig = validate(with_jbeta_marks(parse_signature("gen A : U 0\ngen x : A\ngen P : (Pi (y A) (U 0))\n"
                                                            "gen d : (app P x)\n")));
  Term j = parse_term("(J A x ((y q) (app P y)) d x (refl x))");
  StrictDerivation d = record_derivation(sig, Context{}, j, parse_term("(app P x)"),
                                         {"jbeta_0_0", "jbeta_0_1", "jbeta_1_0", "jbeta_1_1"});
  for (auto _ : st) benchmark::DoNotOptimize(strictify_translate(sig, d).status);
}
BENCHMARK(BM_Strictify)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
