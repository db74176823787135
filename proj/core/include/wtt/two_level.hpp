#pragma once

#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "wtt/congruence.hpp"
#include "wtt/fragment.hpp"
#include "wtt/paths.hpp"

namespace wtt {

// [p] for p : IdO (tm_n A) x y, as an inner term of Id A x y.
Term inner_of_outer(Checker& chk, Context& ctx, const Term& p);
// For x : A, a path in IdO (tm (Id A x x)) from [reflO x] to refl x (JBetaO).
Path inner_of_outer_refl(Checker& chk, Context& ctx, const Term& x);

// ---------------------------------------------------------------------------
// Outer equality read as judgmental equality.

struct OuterObligation {
  std::vector<std::string> context;  // names, outermost first
  Term lhs;
  Term rhs;
  std::string origin;  // the outer proof whose typing needed lhs = rhs
};

class ObligationFailed : public std::runtime_error {
 public:
  explicit ObligationFailed(OuterObligation ob);
  const OuterObligation& obligation() const { return ob_; }

 private:
  OuterObligation ob_;
};

struct EraseResult {
  Term type;                // inferred type, read with strict outer equality
  std::size_t outer_uses = 0;  // outer proof formers in the term
};

// Checks t (against `expected` when given) with IdO read as conversion in
// Strong mode over `marks`; an empty set makes no mark strict. Throws
// ObligationFailed on the first equation that does not hold and TypeError
// (Undecided) when conversion cannot decide.
EraseResult erase_to_strict(const Signature& sig, const std::set<std::string>& marks, Context ctx, const Term& t,
                            const Term& expected = nullptr, const Config& cfg = {});

// ---------------------------------------------------------------------------
// Outer layer interpreted by the inner one.

// Structural translation: tm_n A to A, IdO/reflO/JO/PiO/... to their inner
// counterparts, Hat(m, s) to the mark's term, Tilde(m, s) to the inverse of
// the left unit law at it. Identity on inner terms.
Term collapse_to_inner(const Signature& sig, const Term& t);
// Singleton extensions become two inner binders.
Context collapse_context(const Signature& sig, const Context& ctx);

// ---------------------------------------------------------------------------
// Acyclicity.

// An outer path built from letters (reflO a, Hat, Tilde) by inverse and
// composition. Children index into the owning word list.
struct OuterWord {
  enum class Op { Refl, Hat, Tilde, Inverse, Compose };
  Op op = Op::Refl;
  Path path;  // outer layer: path.type is an outer type
  unsigned depth = 1;
  std::size_t left = 0, right = 0;
  std::string mark;
  std::vector<Term> args;
};

const char* word_op_name(OuterWord::Op op);

struct Contraction {
  std::size_t loop = 0;  // index into words
  Term proof;            // : IdO (IdO T a a) loop (reflO a)
};

struct AcyclicityVerdict {
  enum class Kind { Certified, Unknown };
  Kind kind = Kind::Unknown;
  unsigned depth = 0;
  Fragment inner;
  std::vector<OuterWord> words;
  std::vector<std::size_t> loops;
  std::vector<Contraction> table;
  std::vector<std::size_t> uncontracted;
  std::size_t budget_used = 0;  // inner terms plus words
  std::string reason;

  bool certified() const { return kind == Kind::Certified; }
};

// Enumerates outer words up to `depth` over the inner fragment of that depth
// and contracts every loop with a rewriting prover for the groupoid laws.
// Each contraction is checked by the two-level kernel. Never reports a
// counterexample: loops it cannot contract make the verdict Unknown.
AcyclicityVerdict acyclicity_search(const Signature& sig, unsigned depth, const Config& cfg = {});

class RequiresAcyclicity : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Fibrant congruence on the verdict's inner fragment generated by its outer
// words with distinct endpoints.
Congruence induced_congruence(const Signature& sig, const AcyclicityVerdict& v, const Config& cfg = {});

}  // namespace wtt
