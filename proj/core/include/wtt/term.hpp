#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace wtt {

enum class Kind : std::uint8_t {
  // inner layer
  Var,
  U,
  Lift,
  LiftTm,
  Lower,
  Id,
  Refl,
  J,
  JBeta,
  Pi,
  Lam,
  App,
  Funext,
  FunextBeta,
  FunextApp,
  FunextAppBeta,
  Gen,
  // outer layer
  TmCode,
  IdO,
  ReflO,
  JO,
  JBetaO,
  PiO,
  LamO,
  AppO,
  FunextO,
  FunextBetaO,
  FunextAppO,
  FunextAppBetaO,
  Hat,
  Tilde,
};

constexpr int kKindCount = static_cast<int>(Kind::Tilde) + 1;

struct Node;
using Term = std::shared_ptr<const Node>;

struct Node {
  Kind kind;
  std::uint32_t n = 0;  // Var index, or level of U / TmCode
  std::string name;     // Gen / Hat / Tilde
  std::vector<Term> kids;
  std::size_t hash = 0;
  std::uint32_t depth = 1;
  // Every free index is strictly below this bound.
  std::uint32_t free_bound = 0;
};

const char* kind_name(Kind k);
bool is_outer_kind(Kind k);
// Number of binders the i-th child of a node of kind k introduces.
int binders_of(Kind k, std::size_t i);
// Fixed child count, or -1 for spine-carrying kinds.
int arity_of(Kind k);

Term make(Kind k, std::vector<Term> kids, std::uint32_t n = 0, std::string name = {});

// constructors
Term var(std::uint32_t i);
Term univ(std::uint32_t level);
Term lift_ty(Term a);
Term lift(Term t);
Term lower(Term t);
Term id(Term a, Term x, Term y);
Term refl(Term x);
Term j(Term a, Term x, Term motive, Term d, Term y, Term p);
Term jbeta(Term a, Term x, Term motive, Term d);
Term pi(Term a, Term body);
Term lam(Term a, Term body);
Term app(Term f, Term a);
Term funext(Term f, Term g, Term h);
Term funext_beta(Term f);
Term funext_app(Term f, Term g, Term h, Term a);
Term funext_app_beta(Term f, Term a);
Term gen(std::string name, std::vector<Term> spine = {});
Term tm_code(std::uint32_t level, Term a);
Term id_o(Term t, Term x, Term y);
Term refl_o(Term x);
Term j_o(Term t, Term x, Term motive, Term d, Term y, Term p);
Term jbeta_o(Term t, Term x, Term motive, Term d);
Term pi_o(Term a, Term body);
Term lam_o(Term a, Term body);
Term app_o(Term f, Term a);
Term funext_o(Term f, Term g, Term h);
Term funext_beta_o(Term f);
Term funext_app_o(Term f, Term g, Term h, Term a);
Term funext_app_beta_o(Term f, Term a);
Term hat(std::string mark, std::vector<Term> spine);
Term tilde(std::string mark, std::vector<Term> spine);

// ty_n is tm_{n+1} U_n
Term ty_code(std::uint32_t level);

// Shift free indices >= cutoff by `by`.
Term weaken(const Term& t, std::uint32_t by, std::uint32_t cutoff = 0);

// Simultaneous substitution: Var i (i < args.size()) becomes args[i]; higher
// indices drop by args.size() and are then raised by `shift`.
Term substitute(const Term& body, const std::vector<Term>& args, std::uint32_t shift = 0);

// Lower every free index >= cutoff by `by`; fails if an index in
// [cutoff, cutoff + by) occurs free.
bool try_strengthen(const Term& t, std::uint32_t by, std::uint32_t cutoff, Term& out);

// Same node with new children; returns `t` itself when nothing changed.
Term with_kids(const Term& t, std::vector<Term> kids);

bool alpha_equal(const Term& a, const Term& b);
bool occurs_free(const Term& t, std::uint32_t index);
std::size_t term_size(const Term& t);

struct TermHash {
  std::size_t operator()(const Term& t) const { return t->hash; }
};
struct TermEq {
  bool operator()(const Term& a, const Term& b) const { return alpha_equal(a, b); }
};

class ScopeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TeleEntry {
  std::string name;
  Term type;
  int level = -1;  // filled in by validation
};
using Telescope = std::vector<TeleEntry>;

// Concatenation; `right` is scoped over the variables of `left`.
Telescope tele_join(const Telescope& left, const Telescope& right, std::uint32_t ambient = 0);
bool tele_equal(const Telescope& a, const Telescope& b);

// Context entries: a plain inner binder, or an outer singleton extension
// (y : T, q : IdO T x y), which binds two variables.
struct CtxEntry {
  enum class Kind { Inner, OuterSingleton };
  Kind kind = Kind::Inner;
  std::string name;
  Term type;
  Term center;          // singleton only, scoped like `type`
  std::string name2;    // singleton only
};

class Context {
 public:
  Context() = default;
  void push(Term type, std::string name = {});
  void push_singleton(Term type, Term center, std::string y = {}, std::string q = {});
  void pop(std::size_t n = 1);
  std::size_t size() const { return types_.size(); }
  bool empty() const { return types_.empty(); }
  // Type of Var i, valid in the full context.
  Term lookup(std::uint32_t i) const;
  const std::vector<Term>& raw_types() const { return types_; }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<CtxEntry>& entries() const { return entries_; }
  // Equal stamps mean structurally equal contexts.
  std::uint64_t stamp() const { return stamps_.empty() ? 0 : stamps_.back(); }

 private:
  void push_type(Term type, std::string name);

  std::vector<Term> types_;
  std::vector<std::uint64_t> stamps_;
  std::vector<std::string> names_;
  std::vector<CtxEntry> entries_;
};

}  // namespace wtt
