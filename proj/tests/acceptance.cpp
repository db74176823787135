// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"
#include "oracles.hpp"
#include "wtt/certify.hpp"
#include "wtt/sexpr.hpp"
#include "wtt/strictify.hpp"
#include "wtt/two_level.hpp"

#ifndef WTT_CLI_BINARY
#error "WTT_CLI_BINARY must name the wtt executable"
#endif

using namespace wtt;
namespace oc = wtt::oracle;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

Outcome kernel_laws() {
  auto samples = oc::law_samples(4);
  std::vector<Signature> sigs;
  for (const auto& s : oc::law_signatures()) sigs.push_back(oc::signature_from(s));
  std::size_t failures = 0, beta = 0, jredex = 0;
  std::string first;
  for (const auto& s : samples) {
    auto f = oc::check_laws(sigs[s.sig], s);
    if (s.kind == oc::LawSample::Kind::Beta || s.kind == oc::LawSample::Kind::LiftLower) ++beta;
    if (s.kind == oc::LawSample::Kind::JRedex) ++jredex;
    if (!f.empty() && first.empty()) first = f[0].law + " on " + f[0].term + ": " + f[0].detail;
    failures += !f.empty();
  }
  std::ostringstream d;
  d << samples.size() << " terms (" << beta << " beta/lift redexes, " << jredex << " J redexes), " << failures
    << " failures";
  if (!first.empty()) d << "; first: " << first;
  return {samples.size() >= 500 && failures == 0, d.str()};
}

Outcome derived() {
  std::size_t runs = 0, failures = 0, min_inputs = static_cast<std::size_t>(-1);
  std::string first;
  for (const auto& name : combinator_names()) {
    std::size_t inputs = 0;
    for (std::size_t i = 0; i < cert_input_count(); ++i) {
      CertOutcome o = certify_combinator(name, i);
      ++runs;
      ++inputs;
      if (!o.ok) {
        ++failures;
        if (first.empty()) first = name + " on input " + std::to_string(i) + ": " + o.error;
      }
    }
    min_inputs = std::min(min_inputs, inputs);
  }
  std::ostringstream d;
  d << combinator_names().size() << " combinators x " << min_inputs << " inputs, " << failures << " failures";
  if (!first.empty()) d << "; first: " << first;
  return {min_inputs >= 50 && failures == 0, d.str()};
}

Outcome jbeta_boundary() {
  Signature base = oc::signature_from(oc::jbeta_base_signature());
  Signature marked = validate(with_jbeta_marks(parse_signature(oc::jbeta_base_signature())));
  auto instances = oc::jbeta_instances(base);
  Checker weak(marked, Mode::weak());
  Checker strong(marked, Mode::strong());
  Context ctx;
  std::size_t bad = 0;
  std::string first;
  for (const auto& in : instances) {
    bool ok = weak.conv(ctx, in.jbeta, refl(in.d)) == Conv::No && weak.conv(ctx, in.j, in.d) == Conv::No &&
              strong.conv(ctx, in.jbeta, refl(in.d)) == Conv::Yes && strong.conv(ctx, in.j, in.d) == Conv::Yes;
    if (!ok) {
      ++bad;
      if (first.empty()) first = print_term(in.jbeta);
    }
  }
  std::ostringstream d;
  d << instances.size() << " instances, " << bad << " with the wrong verdict";
  if (!first.empty()) d << "; first: " << first;
  return {instances.size() >= 20 && bad == 0, d.str()};
}

Outcome congruence_oracle() {
  std::size_t bad = 0, terms = 0;
  std::string first;
  for (const auto& cs : oc::congruence_cases()) {
    Signature sig = oc::signature_from(cs.sig);
    Fragment f = enumerate(sig, cs.depth);
    Congruence c = generate(sig, f, cs.mode);
    terms += c.fragment.size();
    std::string why;
    if (oc::naive_partition(sig, f, c) != oc::canonical(c)) why = "partition differs from the oracle";
    QuotientFragment q = quotient(c);
    Report eff = check_effectiveness(c, q);
    Report lift = check_strong_lifting(c, q);
    if (why.empty() && !eff.ok) why = "not effective: " + eff.message;
    if (why.empty() && !lift.ok) why = "strong lifting: " + lift.message;
    if (!why.empty()) {
      ++bad;
      if (first.empty()) first = cs.name + ": " + why;
    }
  }
  std::ostringstream d;
  d << oc::congruence_cases().size() << " signatures, " << terms << " fragment terms, " << bad << " mismatches";
  if (!first.empty()) d << "; first: " << first;
  return {oc::congruence_cases().size() >= 10 && bad == 0, d.str()};
}

Outcome collapse() {
  std::size_t inner = 0, not_fixed = 0;
  std::vector<std::string> sigs = oc::law_signatures();
  sigs.push_back(oc::read_file(oc::corpus_path("sig/demo.sig")));
  for (const auto& text : sigs) {
    Signature sig = oc::signature_from(text);
    Fragment f = enumerate(sig, 3);
    for (const auto& ft : f.terms) {
      for (const Term& t : {ft.term, ft.type}) {
        ++inner;
        if (!alpha_equal(collapse_to_inner(sig, t), t)) ++not_fixed;
      }
    }
  }
  std::size_t outer = 0, ill = 0, mixed = 0;
  std::string first;
  for (const char* rel : {"sig/demo.sig", "sig/two_marks.sig", "sig/family.sig"}) {
    Signature sig = oc::load_signature(rel);
    for (const Term& t : oc::two_level_samples(sig, 2)) {
      ++outer;
      oc::CollapseCheck r = oc::check_collapse(sig, t);
      mixed += r.ok && r.pi_mixed;
      if (!r.ok) {
        ++ill;
        if (first.empty()) first = print_term(t) + ": " + r.detail;
      }
    }
  }
  std::ostringstream d;
  d << inner << " inner terms (" << not_fixed << " moved), " << outer << " two-level terms (" << mixed
    << " mixed-level PiO), " << ill << " typing failures";
  if (!first.empty()) d << "; first: " << first;
  return {inner >= 500 && not_fixed == 0 && outer >= 200 && mixed > 0 && ill == 0, d.str()};
}

Outcome strictify() {
  const std::vector<std::pair<std::string, std::string>> corpus = {
      {"sig/jbeta.sig", "strictify/jbeta.wtt"},
      {"sig/plus.sig", "strictify/plus.wtt"},
      {"sig/hofmann.sig", "strictify/hofmann.wtt"},
      {"sig/uip.sig", "strictify/uip.wtt"},
  };
  std::size_t total = 0, lifted = 0, unknown = 0, bad = 0;
  std::string first;
  auto note = [&](const std::string& where, const std::string& what) {
    ++bad;
    if (first.empty()) first = where + ": " + what;
  };
  for (const auto& [sp, tp] : corpus) {
    cli::StrictifyInput in = cli::load_strictify_input(oc::corpus_path(sp), oc::corpus_path(tp), false);
    Checker weak(in.sig, Mode::weak());
    Checker strong(in.sig, Mode::strong(in.marks));
    for (const auto& e : in.entries) {
      ++total;
      const std::string where = tp + ":" + std::to_string(e.line);
      StrictDerivation d = record_derivation(in.sig, e.ctx, e.term, e.type, in.marks);
      LiftResult lr;
      try {
        lr = strictify_translate(in.sig, d);
      } catch (const UnsupportedMark& ex) {
        note(where, ex.what());
        continue;
      }
      if (!lr.lifted()) {
        ++unknown;
        note(where, "unknown: " + lr.reason);
        continue;
      }
      ++lifted;
      // Re-check the lift independently of the translation.
      try {
        Context c0 = lr.ctx0;
        weak.check_context(c0);
        weak.check(c0, lr.t0, lr.type0);
        weak.check(c0, lr.witness, lr.witness_type);
        Term ty = e.type ? e.type : strong.infer(c0, e.term);
        if (!strong.convertible(c0, lr.t0, e.term)) note(where, "t0 is not strongly convertible to the term");
        else if (!strong.convertible(c0, lr.type0, ty)) note(where, "type0 is not strongly convertible to the type");
        else if (!lr.round_trip) note(where, "no round-trip certificate");
      } catch (const TypeError& ex) {
        note(where, ex.what());
      }
    }
  }
  std::ostringstream d;
  d << total << " derivations, " << lifted << " lifted, " << unknown << " unknown, " << bad << " failures";
  if (!first.empty()) d << "; first: " << first;
  return {total >= 20 && lifted == total && unknown == 0 && bad == 0, d.str()};
}

Outcome acyclicity() {
  std::vector<std::string> empty_marks = {"sig/empty.sig", "sig/point.sig", "sig/family.sig"};
  std::size_t certified = 0, runs = 0;
  std::string first;
  auto run = [&](const std::string& label, const Signature& sig, unsigned depth) {
    ++runs;
    AcyclicityVerdict v = acyclicity_search(sig, depth);
    if (v.certified()) ++certified;
    else if (first.empty()) first = label + " at depth " + std::to_string(depth) + ": " + v.reason;
  };
  for (const auto& rel : empty_marks)
    for (unsigned depth = 1; depth <= 3; ++depth) run(rel, oc::load_signature(rel), depth);
  for (std::size_t i = 0; i < oc::law_signatures().size(); ++i)
    run("law signature " + std::to_string(i), oc::signature_from(oc::law_signatures()[i]), 3);
  AcyclicityVerdict two = acyclicity_search(oc::load_signature("sig/two_marks.sig"), 3);
  std::ostringstream d;
  d << certified << "/" << runs << " empty-mark runs certified; two-marks fixture "
    << (two.certified() ? "Certified" : "Unknown") << " with " << two.uncontracted.size() << " open loops";
  if (!first.empty()) d << "; first uncertified: " << first;
  return {certified == runs && !two.certified(), d.str()};
}

std::string capture(const std::string& cmd, int& status) {
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) {
    status = -1;
    return out;
  }
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  status = pclose(p);
  return out;
}

Outcome determinism() {
  const std::string bin = WTT_CLI_BINARY;
  auto c = [](const std::string& rel) { return oc::corpus_path(rel); };
  std::vector<std::string> cmds;
  for (const char* f : {"check/ok.wtt", "check/jbeta_weak.wtt", "check/jbeta_strong.wtt", "check/reflection.wtt",
                        "check/two_level.wtt"})
    cmds.push_back("check " + c(f));
  cmds.push_back("check " + c("check/jbeta_strong.wtt") + " --mode weak");
  cmds.push_back("derive list");
  for (const auto& name : combinator_names()) cmds.push_back("derive " + name + " --input 7");
  cmds.push_back("derive transport");
  cmds.push_back("derive elim_tele 2 1 --input 3");
  for (const char* s : {"sig/empty.sig", "sig/point.sig", "sig/family.sig", "sig/demo.sig", "sig/two_marks.sig",
                        "sig/jbeta.sig", "sig/plus.sig", "sig/hofmann.sig", "sig/uip.sig"})
    cmds.push_back("quotient " + c(s) + " --depth 2");
  cmds.push_back("quotient " + c("sig/demo.sig") + " --depth 3 --uip");
  cmds.push_back("quotient " + c("sig/jbeta.sig") + " --depth 2 --jbeta-marks");
  for (const char* s : {"sig/empty.sig", "sig/point.sig", "sig/demo.sig"})
    cmds.push_back("acyclic " + c(s) + " --depth 2");
  cmds.push_back("acyclic " + c("sig/two_marks.sig") + " --depth 3");
  cmds.push_back("acyclic " + c("sig/demo.sig") + " --depth 2 --induced");
  for (const char* s : {"jbeta", "plus", "hofmann", "uip"})
    cmds.push_back("strictify " + c(std::string("sig/") + s + ".sig") + " " + c(std::string("strictify/") + s + ".wtt"));
  cmds.push_back("strictify " + c("sig/uip.sig") + " " + c("strictify/limits_uip.wtt"));
  cmds.push_back("strictify " + c("sig/hofmann.sig") + " " + c("strictify/limits_reflection.wtt"));

  std::size_t differ = 0, invalid = 0;
  std::string first;
  for (const auto& cmd : cmds) {
    const std::string full = bin + " " + cmd + " --json 2>/dev/null";
    int s1 = 0, s2 = 0;
    std::string a = capture(full, s1), b = capture(full, s2);
    if (a != b || s1 != s2) {
      ++differ;
      if (first.empty()) first = "differs: " + cmd;
      continue;
    }
    auto j = nlohmann::json::parse(a, nullptr, false);
    if (j.is_discarded() || !j.contains("schema") || !j.contains("exit")) {
      ++invalid;
      if (first.empty()) first = "not a JSON report: " + cmd;
    }
  }
  std::ostringstream d;
  d << cmds.size() << " commands run twice, " << differ << " differing, " << invalid << " invalid";
  if (!first.empty()) d << "; first: " << first;
  return {differ == 0 && invalid == 0, d.str()};
}

}  // namespace

// Optional arguments select criteria by number.
int main(int argc, char** argv) {
  std::set<std::size_t> only;
  for (int i = 1; i < argc; ++i) only.insert(std::stoul(argv[i]));
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"kernel laws", kernel_laws},
      {"derived-combinator certification", derived},
      {"weak vs strong J-beta boundary", jbeta_boundary},
      {"congruence oracle equivalence", congruence_oracle},
      {"collapse retraction and typing", collapse},
      {"strictify round trip", strictify},
      {"acyclicity sanity", acyclicity},
      {"CLI determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (!only.empty() && !only.count(i + 1)) continue;
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << i + 1 << "] " << criteria[i].first << ": " << o.detail << " ("
              << std::fixed << std::setprecision(1) << secs << "s)" << std::endl;
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
