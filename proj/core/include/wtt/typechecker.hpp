#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <unordered_map>
#include <stdexcept>
#include <string>
#include <vector>

#include "wtt/config.hpp"
#include "wtt/signature.hpp"
#include "wtt/term.hpp"

namespace wtt {

enum class TheoryMode { Weak, Strong, TwoLevel };

const char* mode_name(TheoryMode m);

// Strong and TwoLevel carry the marks of the checker's signature; `only`
// restricts the active set when non-empty.
struct Mode {
  TheoryMode kind = TheoryMode::Weak;
  std::set<std::string> only;
  // TwoLevel only: outer equality is read as judgmental equality. Marks are
  // oriented as in Strong mode and outer eliminators compute on any proof.
  bool strict_outer = false;

  static Mode weak() { return {}; }
  static Mode strong(std::set<std::string> marks = {}) { return {TheoryMode::Strong, std::move(marks)}; }
  static Mode two_level(std::set<std::string> marks = {}) { return {TheoryMode::TwoLevel, std::move(marks)}; }
  static Mode erased(std::set<std::string> marks = {}) { return {TheoryMode::TwoLevel, std::move(marks), true}; }
  // Marked equations hold judgmentally.
  bool marks_strict() const { return kind == TheoryMode::Strong || strict_outer; }
};

enum class ErrorCode {
  IllScoped,
  LevelOverflow,
  LayerMismatch,
  NotTypeable,
  TypeMismatch,
  BudgetExceeded,
  Undecided,
  UnknownName,
  ArityMismatch,
};

const char* error_code_name(ErrorCode c);

class TypeError : public std::runtime_error {
 public:
  TypeError(ErrorCode code, const std::string& msg, std::string lhs = {}, std::string rhs = {});
  ErrorCode code() const { return code_; }
  // TypeMismatch: inferred and expected types in normal form.
  const std::string& lhs() const { return lhs_; }
  const std::string& rhs() const { return rhs_; }

 private:
  ErrorCode code_;
  std::string lhs_;
  std::string rhs_;
};

enum class Conv { Yes, No, Undecided };

// A marked equation oriented left to right. Pattern variables are the mark's
// parameters: Var i at binder depth k stands for parameter (size-1-(i-k)).
struct RewriteRule {
  std::string mark;
  bool mark_term_rule = false;  // p[s] -> refl b[s] rather than a[s] -> b[s]
  Telescope params;
  Term lhs;
  Term rhs;
};

struct RuleSet {
  std::vector<RewriteRule> rules;
  std::vector<std::string> unoriented;  // active marks with no usable orientation
};

// Orients the given marks (all validated marks when `only` is empty).
RuleSet orient_marks(const Signature& sig, const std::set<std::string>& only = {});

class Checker;

// Elaboration hook: invoked where the kernel would report a mismatch.
class Coercer {
 public:
  virtual ~Coercer() = default;
  // Returns a term of type `to` built from `term : from`, or throws.
  virtual Term coerce(Checker& chk, Context& ctx, const Term& term, const Term& from, const Term& to) = 0;
  // Offers a type convertible to `type` whose head may expose a former.
  virtual Term expose(Checker& chk, Context& ctx, const Term& type) {
    (void)chk;
    (void)ctx;
    return type;
  }
};

struct Typed {
  Term term;
  Term type;
};

// One record per rewrite performed by the strong-mode conversion.
struct RewriteEvent {
  std::string mark;
  bool mark_term_rule = false;
  Term before;
  Term after;
  std::vector<Term> instance;  // the mark's arguments, outermost first
};

class Checker {
 public:
  Checker(const Signature& sig, Mode mode, Config cfg = {});

  const Signature& signature() const { return *sig_; }
  const Mode& mode() const { return mode_; }
  const Config& config() const { return cfg_; }
  const RuleSet& rules() const { return rules_; }

  Term infer(Context& ctx, const Term& t);
  void check(Context& ctx, const Term& t, const Term& ty);
  // Level n of an inner type (t : U n).
  unsigned type_level(Context& ctx, const Term& t);
  void check_outer_type(Context& ctx, const Term& t);
  bool is_outer_type(Context& ctx, const Term& t);
  void check_context(const Context& ctx);

  Term whnf(Context& ctx, const Term& t);
  Term normalize(Context& ctx, const Term& t);
  // Throws TypeError(Undecided) when strong-mode conversion cannot decide.
  bool convertible(Context& ctx, const Term& a, const Term& b);
  Conv conv(Context& ctx, const Term& a, const Term& b);

  // Elaborating entry points; equal to the input unless a coercer rewrote it.
  Typed infer_elab(Context& ctx, const Term& t);
  Term check_elab(Context& ctx, const Term& t, const Term& ty);
  Term type_elab(Context& ctx, const Term& t, unsigned* level = nullptr);
  Term outer_type_elab(Context& ctx, const Term& t);

  void set_coercer(Coercer* c) { coercer_ = c; }
  void set_trace(std::vector<RewriteEvent>* sink) { trace_ = sink; }
  std::size_t steps_used() const { return steps_; }

  // One head rewrite by an oriented mark, if some rule matches `t`.
  bool rewrite_head(Context& ctx, const Term& t, Term& out, RewriteEvent* event = nullptr,
                    bool endpoint_rules_only = false);

  // Inner view of a type: tm_n A is read as A.
  Term inner_view(Context& ctx, const Term& ty);
  // Outer view: an inner type A at level n is read as tm_n A.
  Term outer_view(Context& ctx, const Term& ty);

 private:
  struct QueryScope;

  Typed infer_rec(Context& ctx, const Term& t);
  Typed infer_core(Context& ctx, const Term& t);
  bool memo_enabled() const { return coercer_ == nullptr && trace_ == nullptr; }
  Term check_rec(Context& ctx, const Term& t, const Term& ty);
  Term type_rec(Context& ctx, const Term& t, unsigned& level);
  Term outer_type_rec(Context& ctx, const Term& t);
  Term expect_shape(Context& ctx, Typed& r, Kind k);
  Term spine_check(Context& ctx, const Telescope& params, const std::vector<Term>& spine, const std::string& what,
                   std::vector<Term>& out_args);
  void require_two_level(const Term& t);
  Conv conv_rec(Context& ctx, const Term& a, const Term& b);
  Term whnf_rec(Context& ctx, const Term& t);
  bool try_rules(Context& ctx, const Term& t, Term& out, bool endpoint_only = false);
  bool erase_step(const Term& t, Term& out);
  bool match(Context& ctx, const Term& pat, const Term& t, std::uint32_t depth, std::vector<Term>& sigma,
             bool at_head = false);
  bool match_pattern_app(Context& ctx, const Term& pat, const Term& t, std::uint32_t depth, std::vector<Term>& sigma,
                         bool& handled);
  std::size_t push_binders(Context& ctx, const Term& node, std::size_t kid);
  Term normalize_rec(Context& ctx, const Term& t);
  [[noreturn]] void mismatch(Context& ctx, const Term& inferred, const Term& expected, Conv why);

  std::shared_ptr<const Signature> sig_;
  Mode mode_;
  Config cfg_;
  RuleSet rules_;
  Coercer* coercer_ = nullptr;
  std::vector<RewriteEvent>* trace_ = nullptr;
  std::size_t steps_ = 0;
  int query_depth_ = 0;

  // Memo tables. Terms are hash-consed, so node identity is structural.
  struct PairHash {
    std::size_t operator()(const std::pair<std::uint64_t, const Node*>& k) const {
      return std::hash<const void*>{}(k.second) ^ (k.first * 0x9e3779b97f4a7c15ULL);
    }
  };
  std::unordered_map<std::pair<std::uint64_t, const Node*>, Typed, PairHash> infer_memo_;
  std::vector<Term> infer_keep_;
  // Context-free conversion results, used when no rewrite rules are active.
  std::map<std::pair<const Node*, const Node*>, bool> conv_memo_;
  std::vector<Term> conv_keep_;
  std::unordered_map<const Node*, Term> nf_memo_;
  std::vector<Term> nf_keep_;
};

// Weak normal form without a context (no rewrite rules involved).
Term normalize_weak(const Term& t);
Term whnf_weak(const Term& t);

}  // namespace wtt
