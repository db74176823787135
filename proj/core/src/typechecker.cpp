#include "wtt/typechecker.hpp"

#include <algorithm>

#include "wtt/paths.hpp"
#include "wtt/sexpr.hpp"

namespace wtt {

const char* mode_name(TheoryMode m) {
  switch (m) {
    case TheoryMode::Weak:
      return "weak";
    case TheoryMode::Strong:
      return "strong";
    case TheoryMode::TwoLevel:
      return "two-level";
  }
  return "?";
}

const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::IllScoped:
      return "IllScoped";
    case ErrorCode::LevelOverflow:
      return "LevelOverflow";
    case ErrorCode::LayerMismatch:
      return "LayerMismatch";
    case ErrorCode::NotTypeable:
      return "NotTypeable";
    case ErrorCode::TypeMismatch:
      return "TypeMismatch";
    case ErrorCode::BudgetExceeded:
      return "BudgetExceeded";
    case ErrorCode::Undecided:
      return "Undecided";
    case ErrorCode::UnknownName:
      return "UnknownName";
    case ErrorCode::ArityMismatch:
      return "ArityMismatch";
  }
  return "?";
}

TypeError::TypeError(ErrorCode code, const std::string& msg, std::string lhs, std::string rhs)
    : std::runtime_error(msg), code_(code), lhs_(std::move(lhs)), rhs_(std::move(rhs)) {}

namespace {

bool all_params_occur(const Term& t, std::size_t k) {
  for (std::size_t i = 0; i < k; ++i)
    if (!occurs_free(t, static_cast<std::uint32_t>(i))) return false;
  return true;
}

std::vector<Term> reversed(const std::vector<Term>& v, std::size_t n) {
  std::vector<Term> out(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n));
  std::reverse(out.begin(), out.end());
  return out;
}

bool is_outer_type_head(Kind k) { return k == Kind::TmCode || k == Kind::IdO || k == Kind::PiO; }

}  // namespace

RuleSet orient_marks(const Signature& sig, const std::set<std::string>& only) {
  RuleSet rs;
  for (const auto& m : sig.marks) {
    if (!only.empty() && !only.count(m.name)) continue;
    if (!m.lhs) {
      rs.unoriented.push_back(m.name);
      continue;
    }
    std::size_t k = m.params.size();
    bool endpoint = m.lhs->kind != Kind::Var && all_params_occur(m.lhs, k);
    if (endpoint) rs.rules.push_back(RewriteRule{m.name, false, m.params, m.lhs, m.rhs});
    else rs.unoriented.push_back(m.name);
    if (m.term->kind != Kind::Var && all_params_occur(m.term, k))
      rs.rules.push_back(RewriteRule{m.name, true, m.params, m.term, refl(m.rhs)});
  }
  return rs;
}

struct Checker::QueryScope {
  Checker& c;
  explicit QueryScope(Checker& ch) : c(ch) {
    if (c.query_depth_++ == 0) c.steps_ = 0;
  }
  ~QueryScope() { --c.query_depth_; }
};

Checker::Checker(const Signature& sig, Mode mode, Config cfg)
    : sig_(std::make_shared<const Signature>(sig)), mode_(std::move(mode)), cfg_(cfg) {
  if (mode_.marks_strict()) rules_ = orient_marks(*sig_, mode_.only);
}

// ---------------------------------------------------------------------------
// public entry points

Term Checker::infer(Context& ctx, const Term& t) { return infer_elab(ctx, t).type; }

void Checker::check(Context& ctx, const Term& t, const Term& ty) { check_elab(ctx, t, ty); }

unsigned Checker::type_level(Context& ctx, const Term& t) {
  unsigned lvl = 0;
  type_elab(ctx, t, &lvl);
  return lvl;
}

void Checker::check_outer_type(Context& ctx, const Term& t) { outer_type_elab(ctx, t); }

bool Checker::is_outer_type(Context& ctx, const Term& t) {
  QueryScope q(*this);
  return is_outer_type_head(whnf_rec(ctx, t)->kind);
}

void Checker::check_context(const Context& ctx) {
  QueryScope q(*this);
  Context pre;
  for (const auto& e : ctx.entries()) {
    if (e.kind == CtxEntry::Kind::Inner) {
      unsigned lvl = 0;
      type_rec(pre, e.type, lvl);
      pre.push(e.type, e.name);
    } else {
      require_two_level(e.type);
      outer_type_rec(pre, e.type);
      check_rec(pre, e.center, e.type);
      pre.push_singleton(e.type, e.center, e.name, e.name2);
    }
  }
}

Typed Checker::infer_elab(Context& ctx, const Term& t) {
  QueryScope q(*this);
  return infer_rec(ctx, t);
}

Term Checker::check_elab(Context& ctx, const Term& t, const Term& ty) {
  QueryScope q(*this);
  return check_rec(ctx, t, ty);
}

Term Checker::type_elab(Context& ctx, const Term& t, unsigned* level) {
  QueryScope q(*this);
  unsigned lvl = 0;
  Term out = type_rec(ctx, t, lvl);
  if (level) *level = lvl;
  return out;
}

Term Checker::outer_type_elab(Context& ctx, const Term& t) {
  QueryScope q(*this);
  return outer_type_rec(ctx, t);
}

Term Checker::whnf(Context& ctx, const Term& t) {
  QueryScope q(*this);
  return whnf_rec(ctx, t);
}

Term Checker::normalize(Context& ctx, const Term& t) {
  QueryScope q(*this);
  return normalize_rec(ctx, t);
}

Conv Checker::conv(Context& ctx, const Term& a, const Term& b) {
  QueryScope q(*this);
  Conv r;
  try {
    r = conv_rec(ctx, a, b);
  } catch (const TypeError& e) {
    if (e.code() == ErrorCode::BudgetExceeded) return Conv::Undecided;
    throw;
  }
  if (r == Conv::No && mode_.marks_strict() && !rules_.unoriented.empty()) return Conv::Undecided;
  return r;
}

bool Checker::convertible(Context& ctx, const Term& a, const Term& b) {
  Conv r = conv(ctx, a, b);
  if (r == Conv::Undecided)
    throw TypeError(ErrorCode::Undecided, "conversion undecided within the rewrite budget or mark set");
  return r == Conv::Yes;
}

Term Checker::inner_view(Context& ctx, const Term& ty) {
  Term w = whnf_rec(ctx, ty);
  if (w->kind == Kind::TmCode) return w->kids[0];
  return ty;
}

Term Checker::outer_view(Context& ctx, const Term& ty) {
  Term w = whnf_rec(ctx, ty);
  if (is_outer_type_head(w->kind)) return ty;
  unsigned lvl = 0;
  type_rec(ctx, ty, lvl);
  return tm_code(lvl, ty);
}

// ---------------------------------------------------------------------------
// errors

namespace {

std::string show(Checker& chk, Context& ctx, const Term& t) {
  Term nf = t;
  try {
    nf = chk.normalize(ctx, t);
  } catch (const std::exception&) {
  }
  try {
    return print_term(nf, ctx.names());
  } catch (const std::exception&) {
    return "<unprintable>";
  }
}

}  // namespace

void Checker::mismatch(Context& ctx, const Term& inferred, const Term& expected, Conv why) {
  if (why == Conv::Undecided)
    throw TypeError(ErrorCode::Undecided, "cannot decide whether the inferred type matches the expected type");
  std::string l = show(*this, ctx, inferred);
  std::string r = show(*this, ctx, expected);
  throw TypeError(ErrorCode::TypeMismatch, "type mismatch: expected " + r + ", got " + l, l, r);
}

void Checker::require_two_level(const Term& t) {
  if (mode_.kind != TheoryMode::TwoLevel)
    throw TypeError(ErrorCode::LayerMismatch,
                    std::string("outer construct '") + kind_name(t->kind) + "' outside two-level mode");
}

// ---------------------------------------------------------------------------
// typing

Term Checker::check_rec(Context& ctx, const Term& t, const Term& ty) {
  Typed r = infer_rec(ctx, t);
  Conv c = conv_rec(ctx, r.type, ty);
  if (c == Conv::Yes) return r.term;
  if (mode_.marks_strict() && !rules_.unoriented.empty()) c = Conv::Undecided;
  if (coercer_) return coercer_->coerce(*this, ctx, r.term, r.type, ty);
  mismatch(ctx, r.type, ty, c);
}

Term Checker::type_rec(Context& ctx, const Term& t, unsigned& level) {
  if (is_outer_type_head(t->kind))
    throw TypeError(ErrorCode::LayerMismatch, std::string("outer type '") + kind_name(t->kind) +
                                                  "' where an inner type is expected");
  Typed r = infer_rec(ctx, t);
  Term w = whnf_rec(ctx, r.type);
  if (w->kind != Kind::U && coercer_) {
    Term e = coercer_->expose(*this, ctx, r.type);
    Term we = whnf_rec(ctx, e);
    if (we->kind == Kind::U) {
      r.term = coercer_->coerce(*this, ctx, r.term, r.type, e);
      w = we;
    }
  }
  if (w->kind != Kind::U) {
    std::string s = show(*this, ctx, r.type);
    throw TypeError(ErrorCode::NotTypeable, "not a type: its type is " + s + ", not a universe");
  }
  level = w->n;
  return r.term;
}

Term Checker::outer_type_rec(Context& ctx, const Term& t) {
  switch (t->kind) {
    case Kind::TmCode: {
      require_two_level(t);
      if (t->n > cfg_.max_level) throw TypeError(ErrorCode::LevelOverflow, "tm level above max_level");
      Term a = check_rec(ctx, t->kids[0], univ(t->n));
      return with_kids(t, {a});
    }
    case Kind::IdO: {
      require_two_level(t);
      Term ty = outer_type_rec(ctx, t->kids[0]);
      Term x = check_rec(ctx, t->kids[1], ty);
      Term y = check_rec(ctx, t->kids[2], ty);
      return with_kids(t, {ty, x, y});
    }
    case Kind::PiO: {
      require_two_level(t);
      unsigned lvl = 0;
      Term a = type_rec(ctx, t->kids[0], lvl);
      ctx.push(a);
      Term b;
      try {
        b = outer_type_rec(ctx, t->kids[1]);
      } catch (...) {
        ctx.pop();
        throw;
      }
      ctx.pop();
      return with_kids(t, {a, b});
    }
    default: {
      unsigned lvl = 0;
      return type_rec(ctx, t, lvl);
    }
  }
}

Term Checker::expect_shape(Context& ctx, Typed& r, Kind k) {
  Term w = whnf_rec(ctx, r.type);
  if (w->kind == Kind::TmCode && k != Kind::TmCode) w = whnf_rec(ctx, w->kids[0]);
  if (w->kind == k) return w;
  if (coercer_) {
    Term e = coercer_->expose(*this, ctx, r.type);
    Term we = whnf_rec(ctx, e);
    if (we->kind == Kind::TmCode) we = whnf_rec(ctx, we->kids[0]);
    if (we->kind == k) {
      r.term = coercer_->coerce(*this, ctx, r.term, r.type, e);
      r.type = e;
      return we;
    }
  }
  std::string s = show(*this, ctx, r.type);
  throw TypeError(ErrorCode::NotTypeable, std::string("expected a term whose type is a ") + kind_name(k) +
                                              ", got one of type " + s);
}

Term Checker::spine_check(Context& ctx, const Telescope& params, const std::vector<Term>& spine,
                          const std::string& what, std::vector<Term>& out_args) {
  if (spine.size() != params.size())
    throw TypeError(ErrorCode::ArityMismatch, what + " expects " + std::to_string(params.size()) +
                                                  " arguments, got " + std::to_string(spine.size()));
  out_args.clear();
  for (std::size_t i = 0; i < params.size(); ++i) {
    Term expected = substitute(params[i].type, reversed(out_args, i));
    out_args.push_back(check_rec(ctx, spine[i], expected));
  }
  return nullptr;
}

namespace {

// Pops the binders pushed for a child on scope exit.
struct Guard {
  Context& ctx;
  std::size_t n;
  ~Guard() { ctx.pop(n); }
};

}  // namespace

Typed Checker::infer_rec(Context& ctx, const Term& t) {
  if (!memo_enabled() || t->kids.empty()) return infer_core(ctx, t);
  std::pair<std::uint64_t, const Node*> key{ctx.stamp(), t.get()};
  auto it = infer_memo_.find(key);
  if (it != infer_memo_.end()) return it->second;
  Typed r = infer_core(ctx, t);
  infer_memo_.emplace(key, r);
  infer_keep_.push_back(t);
  return r;
}

Typed Checker::infer_core(Context& ctx, const Term& t) {
  const auto& k = t->kids;
  if (is_outer_kind(t->kind)) require_two_level(t);
  auto level_ok = [&](unsigned n, const char* what) {
    if (n > cfg_.max_level)
      throw TypeError(ErrorCode::LevelOverflow, std::string(what) + " at level " + std::to_string(n) +
                                                    " exceeds max_level " + std::to_string(cfg_.max_level));
  };
  auto inner_type_of = [&](Context& c, const Term& ty) {
    Term v = inner_view(c, ty);
    Term w = whnf_rec(c, v);
    if (w->kind == Kind::IdO || w->kind == Kind::PiO)
      throw TypeError(ErrorCode::LayerMismatch, "outer term used where an inner term is expected");
    return v;
  };

  switch (t->kind) {
    case Kind::Var: {
      if (t->n >= ctx.size())
        throw TypeError(ErrorCode::IllScoped, "variable index " + std::to_string(t->n) + " is not bound");
      return {t, ctx.lookup(t->n)};
    }
    case Kind::U:
      level_ok(t->n + 1, "universe");
      return {t, univ(t->n + 1)};
    case Kind::Lift: {
      unsigned n = 0;
      Term a = type_rec(ctx, k[0], n);
      level_ok(n + 1, "Lift");
      return {with_kids(t, {a}), univ(n + 1)};
    }
    case Kind::LiftTm: {
      Typed r = infer_rec(ctx, k[0]);
      Term ty = inner_type_of(ctx, r.type);
      unsigned n = 0;
      type_rec(ctx, ty, n);
      level_ok(n + 1, "lift");
      return {with_kids(t, {r.term}), lift_ty(ty)};
    }
    case Kind::Lower: {
      Typed r = infer_rec(ctx, k[0]);
      Term w = expect_shape(ctx, r, Kind::Lift);
      return {with_kids(t, {r.term}), w->kids[0]};
    }
    case Kind::Id: {
      unsigned n = 0;
      Term a = type_rec(ctx, k[0], n);
      Term x = check_rec(ctx, k[1], a);
      Term y = check_rec(ctx, k[2], a);
      return {with_kids(t, {a, x, y}), univ(n)};
    }
    case Kind::Refl: {
      Typed r = infer_rec(ctx, k[0]);
      Term a = inner_type_of(ctx, r.type);
      return {with_kids(t, {r.term}), id(a, r.term, r.term)};
    }
    case Kind::J:
    case Kind::JBeta: {
      unsigned n = 0;
      Term a = type_rec(ctx, k[0], n);
      Term x = check_rec(ctx, k[1], a);
      ctx.push(a);
      ctx.push(id(weaken(a, 1), weaken(x, 1), var(0)));
      Term motive;
      {
        Guard g{ctx, 2};
        unsigned m = 0;
        motive = type_rec(ctx, k[2], m);
      }
      Term d = check_rec(ctx, k[3], inst2(motive, x, refl(x)));
      if (t->kind == Kind::JBeta) {
        Term ty = id(inst2(motive, x, refl(x)), j(a, x, motive, d, x, refl(x)), d);
        return {jbeta(a, x, motive, d), ty};
      }
      Term y = check_rec(ctx, k[4], a);
      Term p = check_rec(ctx, k[5], id(a, x, y));
      return {with_kids(t, {a, x, motive, d, y, p}), inst2(motive, y, p)};
    }
    case Kind::Pi: {
      unsigned n = 0, m = 0;
      Term a = type_rec(ctx, k[0], n);
      ctx.push(a);
      Term b;
      {
        Guard g{ctx, 1};
        b = type_rec(ctx, k[1], m);
      }
      return {with_kids(t, {a, b}), univ(std::max(n, m))};
    }
    case Kind::Lam: {
      unsigned n = 0;
      Term a = type_rec(ctx, k[0], n);
      ctx.push(a);
      Typed body;
      {
        Guard g{ctx, 1};
        body = infer_rec(ctx, k[1]);
        body.type = inner_type_of(ctx, body.type);
      }
      return {with_kids(t, {a, body.term}), pi(a, body.type)};
    }
    case Kind::App: {
      Typed f = infer_rec(ctx, k[0]);
      Term w = expect_shape(ctx, f, Kind::Pi);
      Term a = check_rec(ctx, k[1], w->kids[0]);
      return {app(f.term, a), inst1(w->kids[1], a)};
    }
    case Kind::Funext:
    case Kind::FunextApp:
    case Kind::FunextO:
    case Kind::FunextAppO: {
      Layer l = is_outer_kind(t->kind) ? Layer::Outer : Layer::Inner;
      Typed f = infer_rec(ctx, k[0]);
      Term w = expect_shape(ctx, f, l == Layer::Inner ? Kind::Pi : Kind::PiO);
      Term fty = f.type;
      Term g = check_rec(ctx, k[1], fty);
      Term hty = pi_l(l, w->kids[0],
                      id_l(l, w->kids[1], app_l(l, weaken(f.term, 1), var(0)), app_l(l, weaken(g, 1), var(0))));
      Term h = check_rec(ctx, k[2], hty);
      if (t->kind == Kind::Funext || t->kind == Kind::FunextO)
        return {with_kids(t, {f.term, g, h}), id_l(l, fty, f.term, g)};
      Term a = check_rec(ctx, k[3], w->kids[0]);
      Term ba = inst1(w->kids[1], a);
      Term inner = id_l(l, ba, app_l(l, f.term, a), app_l(l, g, a));
      Term hp = happly(l, w, f.term, g, funext_l(l, f.term, g, h), a);
      return {with_kids(t, {f.term, g, h, a}), id_l(l, inner, hp, app_l(l, h, a))};
    }
    case Kind::FunextBeta:
    case Kind::FunextBetaO: {
      Layer l = t->kind == Kind::FunextBetaO ? Layer::Outer : Layer::Inner;
      Typed f = infer_rec(ctx, k[0]);
      Term w = expect_shape(ctx, f, l == Layer::Inner ? Kind::Pi : Kind::PiO);
      Term h0 = lam_l(l, w->kids[0], refl_l(l, app_l(l, weaken(f.term, 1), var(0))));
      Term e = id_l(l, f.type, f.term, f.term);
      return {with_kids(t, {f.term}), id_l(l, e, funext_l(l, f.term, f.term, h0), refl_l(l, f.term))};
    }
    case Kind::FunextAppBeta:
    case Kind::FunextAppBetaO: {
      Layer l = t->kind == Kind::FunextAppBetaO ? Layer::Outer : Layer::Inner;
      Typed f = infer_rec(ctx, k[0]);
      Term w = expect_shape(ctx, f, l == Layer::Inner ? Kind::Pi : Kind::PiO);
      Term a = check_rec(ctx, k[1], w->kids[0]);
      Term h0 = lam_l(l, w->kids[0], refl_l(l, app_l(l, weaken(f.term, 1), var(0))));
      Path target = funext_app_beta_target(l, w, f.term, a);
      Term lhs_ty = id_l(l, target.type, target.lhs, app_l(l, h0, a));
      Term fa = l == Layer::Inner ? funext_app(f.term, f.term, h0, a) : funext_app_o(f.term, f.term, h0, a);
      return {with_kids(t, {f.term, a}), id_l(l, lhs_ty, fa, target.proof)};
    }
    case Kind::Gen: {
      const GenDecl* g = sig_->find_gen(t->name);
      if (!g) throw TypeError(ErrorCode::UnknownName, "unknown generator '" + t->name + "'");
      std::vector<Term> args;
      spine_check(ctx, g->params, k, "generator '" + t->name + "'", args);
      Term ty = substitute(g->type, reversed(args, args.size()));
      return {gen(t->name, args), ty};
    }
    case Kind::TmCode:
    case Kind::IdO:
    case Kind::PiO:
      throw TypeError(ErrorCode::NotTypeable, std::string("outer type '") + kind_name(t->kind) +
                                                  "' has no type (outer types are not terms)");
    case Kind::ReflO: {
      Typed r = infer_rec(ctx, k[0]);
      return {with_kids(t, {r.term}), id_o(outer_view(ctx, r.type), r.term, r.term)};
    }
    case Kind::JO:
    case Kind::JBetaO: {
      Term ty = outer_type_rec(ctx, k[0]);
      Term x = check_rec(ctx, k[1], ty);
      ctx.push_singleton(ty, x);
      Term motive;
      {
        Guard g{ctx, 1};
        motive = outer_type_rec(ctx, k[2]);
      }
      Term d = check_rec(ctx, k[3], inst2(motive, x, refl_o(x)));
      if (t->kind == Kind::JBetaO) {
        Term dty = outer_view(ctx, inst2(motive, x, refl_o(x)));
        return {jbeta_o(ty, x, motive, d), id_o(dty, j_o(ty, x, motive, d, x, refl_o(x)), d)};
      }
      Term y = check_rec(ctx, k[4], ty);
      Term p = check_rec(ctx, k[5], id_o(ty, x, y));
      return {with_kids(t, {ty, x, motive, d, y, p}), inst2(motive, y, p)};
    }
    case Kind::LamO: {
      unsigned n = 0;
      Term a = type_rec(ctx, k[0], n);
      ctx.push(a);
      Typed body;
      {
        Guard g{ctx, 1};
        body = infer_rec(ctx, k[1]);
        body.type = outer_view(ctx, body.type);
      }
      return {with_kids(t, {a, body.term}), pi_o(a, body.type)};
    }
    case Kind::AppO: {
      Typed f = infer_rec(ctx, k[0]);
      Term w = expect_shape(ctx, f, Kind::PiO);
      Term a = check_rec(ctx, k[1], w->kids[0]);
      return {app_o(f.term, a), inst1(w->kids[1], a)};
    }
    case Kind::Hat:
    case Kind::Tilde: {
      const MarkDecl* m = sig_->find_mark(t->name);
      if (m && !mode_.strict_outer && !mode_.only.empty() && !mode_.only.count(m->name)) m = nullptr;
      if (!m) throw TypeError(ErrorCode::UnknownName, "unknown mark '" + t->name + "'");
      if (!m->carrier) throw TypeError(ErrorCode::NotTypeable, "mark '" + t->name + "' is not validated");
      std::vector<Term> args;
      spine_check(ctx, m->params, k, "mark '" + t->name + "'", args);
      auto inst = [&](const Term& x) { return substitute(x, reversed(args, args.size())); };
      auto lvl = static_cast<std::uint32_t>(m->level);
      Term a = inst(m->carrier), lhs = inst(m->lhs), rhs = inst(m->rhs);
      if (t->kind == Kind::Hat) return {hat(t->name, args), id_o(tm_code(lvl, a), lhs, rhs)};
      Term h = hat(t->name, args);
      Term bracket = inner_of_outer_term(lvl, a, lhs, rhs, h);
      return {tilde(t->name, args), id_o(tm_code(lvl, inst(m->id_type)), inst(m->term), bracket)};
    }
  }
  throw TypeError(ErrorCode::NotTypeable, "unhandled term former");
}

// ---------------------------------------------------------------------------
// reduction and conversion

std::size_t Checker::push_binders(Context& ctx, const Term& node, std::size_t kid) {
  switch (node->kind) {
    case Kind::J:
    case Kind::JBeta:
      if (kid != 2) return 0;
      ctx.push(node->kids[0]);
      ctx.push(id(weaken(node->kids[0], 1), weaken(node->kids[1], 1), var(0)));
      return 2;
    case Kind::JO:
    case Kind::JBetaO:
      if (kid != 2) return 0;
      ctx.push_singleton(node->kids[0], node->kids[1]);
      return 1;
    case Kind::Pi:
    case Kind::Lam:
    case Kind::PiO:
    case Kind::LamO:
      if (kid != 1) return 0;
      ctx.push(node->kids[0]);
      return 1;
    default:
      return 0;
  }
}

Term Checker::whnf_rec(Context& ctx, const Term& t0) {
  Term t = t0;
  for (;;) {
    switch (t->kind) {
      case Kind::App:
      case Kind::AppO: {
        Term f = whnf_rec(ctx, t->kids[0]);
        Kind lam_kind = t->kind == Kind::App ? Kind::Lam : Kind::LamO;
        if (f->kind == lam_kind) {
          t = inst1(f->kids[1], t->kids[1]);
          continue;
        }
        t = with_kids(t, {f, t->kids[1]});
        break;
      }
      case Kind::Lower: {
        Term a = whnf_rec(ctx, t->kids[0]);
        if (a->kind == Kind::LiftTm) {
          t = a->kids[0];
          continue;
        }
        t = with_kids(t, {a});
        break;
      }
      case Kind::LiftTm: {
        Term a = whnf_rec(ctx, t->kids[0]);
        if (a->kind == Kind::Lower) {
          t = a->kids[0];
          continue;
        }
        t = with_kids(t, {a});
        break;
      }
      default:
        break;
    }
    if (mode_.strict_outer) {
      Term out;
      if (erase_step(t, out)) {
        t = out;
        continue;
      }
    }
    if (mode_.marks_strict() && !rules_.rules.empty()) {
      Term out;
      if (try_rules(ctx, t, out)) {
        t = out;
        continue;
      }
    }
    return t;
  }
}

bool Checker::rewrite_head(Context& ctx, const Term& t, Term& out, RewriteEvent* event, bool endpoint_rules_only) {
  QueryScope q(*this);
  std::vector<RewriteEvent>* saved = trace_;
  std::vector<RewriteEvent> one;
  if (event) trace_ = &one;
  bool r = false;
  try {
    r = try_rules(ctx, t, out, endpoint_rules_only);
  } catch (...) {
    trace_ = saved;
    throw;
  }
  trace_ = saved;
  if (r && event) *event = one.back();
  return r;
}

// With strict outer equality every outer proof computes to reflexivity.
bool Checker::erase_step(const Term& t, Term& out) {
  switch (t->kind) {
    case Kind::JO:
      out = t->kids[3];
      return true;
    case Kind::JBetaO:
      out = refl_o(t->kids[3]);
      return true;
    case Kind::Hat:
    case Kind::Tilde: {
      const MarkDecl* m = sig_->find_mark(t->name);
      if (!m || !m->carrier || t->kids.size() != m->params.size()) return false;
      Term end = substitute(t->kind == Kind::Hat ? m->lhs : m->term, reversed(t->kids, t->kids.size()));
      out = refl_o(end);
      return true;
    }
    default:
      return false;
  }
}

bool Checker::try_rules(Context& ctx, const Term& t, Term& out, bool endpoint_only) {
  for (const auto& rule : rules_.rules) {
    if (endpoint_only && rule.mark_term_rule) continue;
    if (rule.lhs->kind != t->kind || rule.lhs->name != t->name) continue;
    std::vector<Term> sigma(rule.params.size());
    if (!match(ctx, rule.lhs, t, 0, sigma, true)) continue;
    bool complete = std::all_of(sigma.begin(), sigma.end(), [](const Term& s) { return s != nullptr; });
    if (!complete) continue;
    // The instance must be well-typed against the mark's parameters.
    Coercer* saved = coercer_;
    coercer_ = nullptr;
    bool ok = true;
    try {
      for (std::size_t i = 0; i < sigma.size() && ok; ++i) {
        Term expected = substitute(rule.params[i].type, reversed(sigma, i));
        Typed r = infer_rec(ctx, sigma[i]);
        ok = conv_rec(ctx, r.type, expected) == Conv::Yes;
      }
    } catch (const TypeError& e) {
      coercer_ = saved;
      if (e.code() == ErrorCode::BudgetExceeded) throw;
      ok = false;
    }
    coercer_ = saved;
    if (!ok) continue;
    if (++steps_ > cfg_.rewrite_budget)
      throw TypeError(ErrorCode::BudgetExceeded,
                      "rewrite budget of " + std::to_string(cfg_.rewrite_budget) + " steps exhausted");
    out = substitute(rule.rhs, reversed(sigma, sigma.size()));
    if (trace_) trace_->push_back(RewriteEvent{rule.mark, rule.mark_term_rule, t, out, sigma});
    return true;
  }
  return false;
}

bool Checker::match_pattern_app(Context& ctx, const Term& pat, const Term& t, std::uint32_t depth,
                                std::vector<Term>& sigma, bool& handled) {
  handled = false;
  std::vector<Term> args;
  Term head = pat;
  while (head->kind == Kind::App) {
    args.push_back(head->kids[1]);
    head = head->kids[0];
  }
  if (head->kind != Kind::Var || head->n < depth) return false;
  std::reverse(args.begin(), args.end());
  auto m = static_cast<std::uint32_t>(args.size());
  if (m > depth) return false;
  for (std::uint32_t i = 0; i < m; ++i)
    if (args[i]->kind != Kind::Var || args[i]->n != m - 1 - i) return false;
  handled = true;
  std::size_t idx = sigma.size() - 1 - (head->n - depth);
  if (sigma[idx]) {
    Term applied = weaken(sigma[idx], depth);
    for (std::uint32_t i = 0; i < m; ++i) applied = app(applied, var(m - 1 - i));
    return conv_rec(ctx, applied, t) == Conv::Yes;
  }
  Term body = t;
  const auto& types = ctx.raw_types();
  for (std::uint32_t j = 0; j < m; ++j) body = lam(types[types.size() - 1 - j], body);
  Term s;
  if (!try_strengthen(body, depth - m, 0, s)) return false;
  sigma[idx] = s;
  return true;
}

bool Checker::match(Context& ctx, const Term& pat, const Term& t, std::uint32_t depth, std::vector<Term>& sigma,
                    bool at_head) {
  if (pat->kind == Kind::Var) {
    if (pat->n < depth) {
      Term w = t->kind == Kind::Var ? t : whnf_rec(ctx, t);
      return w->kind == Kind::Var && w->n == pat->n;
    }
    std::size_t idx = sigma.size() - 1 - (pat->n - depth);
    if (sigma[idx]) return conv_rec(ctx, weaken(sigma[idx], depth), t) == Conv::Yes;
    Term s;
    if (!try_strengthen(t, depth, 0, s)) return false;
    sigma[idx] = s;
    return true;
  }
  if (pat->kind == Kind::App) {
    bool handled = false;
    bool r = match_pattern_app(ctx, pat, t, depth, sigma, handled);
    if (handled) return r;
  }
  Term s = t;
  for (int attempt = 0; attempt < 2; ++attempt) {
    if (s->kind == pat->kind && s->n == pat->n && s->name == pat->name && s->kids.size() == pat->kids.size()) {
      std::vector<Term> saved = sigma;
      bool ok = true;
      for (std::size_t i = 0; i < pat->kids.size() && ok; ++i) {
        std::size_t pushed = push_binders(ctx, s, i);
        Guard g{ctx, pushed};
        ok = match(ctx, pat->kids[i], s->kids[i], depth + static_cast<std::uint32_t>(binders_of(s->kind, i)), sigma);
      }
      if (ok) return true;
      sigma = std::move(saved);
    }
    // The redex itself is already in head normal form; reducing it again
    // would retry this rule.
    if (at_head) return false;
    if (attempt == 0) {
      Term w = whnf_rec(ctx, s);
      if (w == s || alpha_equal(w, s)) return false;
      s = w;
    }
  }
  return false;
}

Conv Checker::conv_rec(Context& ctx, const Term& a, const Term& b) {
  if (a == b || alpha_equal(a, b)) return Conv::Yes;
  // Without rewrite rules reduction ignores the context, so results are reusable.
  bool context_free = rules_.rules.empty() && rules_.unoriented.empty();
  if (context_free) {
    auto it = conv_memo_.find({a.get(), b.get()});
    if (it != conv_memo_.end()) return it->second ? Conv::Yes : Conv::No;
  }
  auto remember = [&](Conv c) {
    if (context_free) {
      conv_memo_.emplace(std::make_pair(a.get(), b.get()), c == Conv::Yes);
      conv_keep_.push_back(a);
      conv_keep_.push_back(b);
    }
    return c;
  };
  Term wa = whnf_rec(ctx, a);
  Term wb = whnf_rec(ctx, b);
  // tm_n A and A denote isomorphic families; compare through the code.
  while (wa->kind == Kind::TmCode && wb->kind != Kind::TmCode) wa = whnf_rec(ctx, wa->kids[0]);
  while (wb->kind == Kind::TmCode && wa->kind != Kind::TmCode) wb = whnf_rec(ctx, wb->kids[0]);
  if (wa == wb || alpha_equal(wa, wb)) return remember(Conv::Yes);
  if (wa->kind != wb->kind || wa->n != wb->n || wa->name != wb->name || wa->kids.size() != wb->kids.size())
    return remember(Conv::No);
  for (std::size_t i = 0; i < wa->kids.size(); ++i) {
    std::size_t pushed = push_binders(ctx, wa, i);
    Guard g{ctx, pushed};
    if (conv_rec(ctx, wa->kids[i], wb->kids[i]) != Conv::Yes) return remember(Conv::No);
  }
  return remember(Conv::Yes);
}

Term Checker::normalize_rec(Context& ctx, const Term& t) {
  bool context_free = rules_.rules.empty() && rules_.unoriented.empty();
  if (context_free && !t->kids.empty()) {
    auto it = nf_memo_.find(t.get());
    if (it != nf_memo_.end()) return it->second;
  }
  Term w = whnf_rec(ctx, t);
  if (w->kids.empty()) return w;
  std::vector<Term> kids;
  kids.reserve(w->kids.size());
  for (std::size_t i = 0; i < w->kids.size(); ++i) {
    std::size_t pushed = push_binders(ctx, w, i);
    Guard g{ctx, pushed};
    kids.push_back(normalize_rec(ctx, w->kids[i]));
  }
  Term out = with_kids(w, std::move(kids));
  if (context_free) {
    nf_memo_.emplace(t.get(), out);
    nf_keep_.push_back(t);
  }
  return out;
}

// ---------------------------------------------------------------------------

Term normalize_weak(const Term& t) {
  Signature empty;
  Checker c(empty, Mode::weak());
  Context ctx;
  for (std::uint32_t i = 0; i < t->free_bound; ++i) ctx.push(univ(0));
  return c.normalize(ctx, t);
}

Term whnf_weak(const Term& t) {
  Signature empty;
  Checker c(empty, Mode::weak());
  Context ctx;
  for (std::uint32_t i = 0; i < t->free_bound; ++i) ctx.push(univ(0));
  return c.whnf(ctx, t);
}

}  // namespace wtt
