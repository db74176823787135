#pragma once

#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "wtt/fragment.hpp"
#include "wtt/paths.hpp"

namespace wtt {

// A Strong-mode judgement ctx |- term : type with the rewrites its check used.
struct StrictDerivation {
  Context ctx;
  Term term;
  Term type;                    // null: inferred
  std::set<std::string> marks;  // empty: every mark of the signature
  std::vector<RewriteEvent> trace;
};

// Checks in Strong mode and records the trace. Throws TypeError.
StrictDerivation record_derivation(const Signature& sig, Context ctx, const Term& term, const Term& type = nullptr,
                                   const std::set<std::string>& marks = {}, const Config& cfg = {});

// Re-checks with only the marks named in the trace active.
bool replay(const Signature& sig, const StrictDerivation& d, const Config& cfg = {});

class UnsupportedMark : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LiftResult {
  enum class Status { Lifted, Unknown };
  Status status = Status::Unknown;
  Context ctx0;
  Term t0;
  Term type0;
  Term witness;       // refl t0
  Term witness_type;  // Id type0 t0 t0, checked in Weak mode
  // Strong-mode certificate: witness : Id type t0 term over the marks.
  bool round_trip = false;
  std::size_t transports = 0;
  std::vector<std::string> marks_used;  // in order of first use
  std::string reason;

  bool lifted() const { return status == Status::Lifted; }
};

// Replaces every Strong-only conversion by a transport along a path built
// from mark instances (rewriting both types to a common form, innermost
// first, with ap at non-dependent positions). Budget exhaustion and
// undecided conversion give Status::Unknown; positions that need a
// dependent path or a mark-term rewrite throw UnsupportedMark.
LiftResult strictify_translate(const Signature& sig, const StrictDerivation& d, const Config& cfg = {});

// A path from t to its form under the oriented endpoint rules of `marks`.
// Throws UnsupportedMark as above.
Path rewrite_path(const Signature& sig, Context& ctx, const Term& t, const std::set<std::string>& marks = {},
                  const Config& cfg = {});

struct LiftingReport {
  std::size_t terms = 0;
  std::size_t lifted = 0;
  std::size_t unknown = 0;
  std::size_t unsupported = 0;
  std::size_t transports = 0;
  std::vector<std::string> failures;  // printed terms with the reason

  bool ok() const { return lifted == terms; }
};

// Enumerates the Strong-mode fragment to `depth` and lifts every term.
LiftingReport check_weak_lifting(const Signature& sig, unsigned depth, const Config& cfg = {});

}  // namespace wtt
