#pragma once

// Independent oracles and generators shared by the gtest suites and the
// acceptance binary.

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "wtt/congruence.hpp"
#include "wtt/fragment.hpp"
#include "wtt/signature.hpp"
#include "wtt/typechecker.hpp"

namespace wtt::oracle {

std::string corpus_path(const std::string& rel);
std::string read_file(const std::string& path);
Signature load_signature(const std::string& rel);
Signature signature_from(const std::string& text);

// ---------------------------------------------------------------------------
// Kernel laws.

struct LawSample {
  enum class Kind { Plain, Beta, LiftLower, JRedex };
  Kind kind = Kind::Plain;
  std::size_t sig = 0;  // index into law_signatures()
  Term term;
  Term type;
  Term expect;  // Beta / LiftLower: the reduct; JRedex: the base point d
};

// Signatures with at most three generators.
const std::vector<std::string>& law_signatures();
// Enumerated terms at depth <= `depth` plus redexes built from them.
std::vector<LawSample> law_samples(unsigned depth = 3);

struct LawFailure {
  std::string law;
  std::string term;
  std::string detail;
};

// Returns an empty vector when every law holds for the sample.
std::vector<LawFailure> check_laws(const Signature& sig, const LawSample& s, const Config& cfg = {});

// ---------------------------------------------------------------------------
// Congruence.

struct CongruenceCase {
  std::string name;
  std::string sig;
  CongruenceMode mode = CongruenceMode::MarkedOnly;
  unsigned depth = 3;
};

inline void PrintTo(const CongruenceCase& c, std::ostream* os) { *os << c.name; }

// Signatures with at most four generators and two marks.
const std::vector<CongruenceCase>& congruence_cases();

// Naive fixed point over the final fragment of `c`: generating pairs are
// recomputed from the marks (and internal equalities in UIP mode), the
// transport extensions of `c` are taken as given, and congruence is applied
// by comparing every pair of terms until nothing changes. Returns the
// smallest member of each term's class.
std::vector<std::size_t> naive_partition(const Signature& sig, const Fragment& enumerated, const Congruence& c,
                                         const Config& cfg = {});
std::vector<std::size_t> canonical(const Congruence& c);

// ---------------------------------------------------------------------------
// Weak vs strong J-beta.

struct JBetaInstance {
  Term jbeta;  // J-beta A x M d
  Term j;      // J A x M d x (refl x)
  Term d;
};

// The base signature for the instances; wrap with with_jbeta_marks.
std::string jbeta_base_signature();
std::vector<JBetaInstance> jbeta_instances(const Signature& base, unsigned depth = 2);

// ---------------------------------------------------------------------------
// Two-level terms.

// Outer terms over the enumerated inner fragment: reflO, JO, JBetaO, lamO,
// appO, hat and tilde. Only terms the two-level kernel accepts are kept.
std::vector<Term> two_level_samples(const Signature& sig, unsigned depth = 2);

struct CollapseCheck {
  bool ok = false;
  bool pi_mixed = false;  // PiO type whose domain and codomain levels differ
  std::string detail;
};

// t : T in two-level mode implies collapse(t) : collapse(T) in Weak mode,
// and a PiO type collapses to a Pi at the larger of the two levels.
CollapseCheck check_collapse(const Signature& sig, const Term& t, const Config& cfg = {});

}  // namespace wtt::oracle
