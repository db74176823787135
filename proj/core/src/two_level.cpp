#include "wtt/two_level.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>

#include "wtt/sexpr.hpp"

namespace wtt {

namespace {

std::vector<Term> reversed(const std::vector<Term>& v) { return {v.rbegin(), v.rend()}; }

// Level and inner carrier of an outer type tm_n A (or of an inner type A).
std::pair<std::uint32_t, Term> code_of(Checker& chk, Context& ctx, const Term& ty) {
  Term w = chk.whnf(ctx, ty);
  if (w->kind == Kind::TmCode) return {w->n, w->kids[0]};
  return {chk.type_level(ctx, ty), ty};
}

}  // namespace

Term inner_of_outer(Checker& chk, Context& ctx, const Term& p) {
  Term ty = chk.whnf(ctx, chk.infer(ctx, p));
  if (ty->kind != Kind::IdO) throw TypeError(ErrorCode::NotTypeable, "inner_of_outer expects an outer equality");
  auto [lvl, a] = code_of(chk, ctx, ty->kids[0]);
  return inner_of_outer_term(lvl, a, ty->kids[1], ty->kids[2], p);
}

Path inner_of_outer_refl(Checker& chk, Context& ctx, const Term& x) {
  Term a = chk.inner_view(ctx, chk.infer(ctx, x));
  std::uint32_t lvl = chk.type_level(ctx, a);
  Term motive = tm_code(lvl, id(weaken(a, 2), weaken(x, 2), var(1)));
  return jbeta_path(Layer::Outer, tm_code(lvl, a), x, motive, refl(x));
}

// ---------------------------------------------------------------------------

ObligationFailed::ObligationFailed(OuterObligation ob)
    : std::runtime_error("outer equation does not hold strictly: " +
                         print_term(ob.lhs, ob.context) + " = " + print_term(ob.rhs, ob.context)),
      ob_(std::move(ob)) {}

namespace {

class Obligations : public Coercer {
 public:
  Term coerce(Checker& chk, Context& ctx, const Term& term, const Term& from, const Term& to) override {
    Term wf = chk.whnf(ctx, from), wt = chk.whnf(ctx, to);
    if (wf->kind == Kind::IdO && wt->kind == Kind::IdO && chk.conv(ctx, wf->kids[0], wt->kids[0]) == Conv::Yes) {
      for (int i = 1; i <= 2; ++i) {
        Conv c = chk.conv(ctx, wf->kids[i], wt->kids[i]);
        if (c == Conv::Undecided) throw TypeError(ErrorCode::Undecided, "outer obligation undecided");
        if (c == Conv::No) {
          OuterObligation ob{ctx.names(), chk.normalize(ctx, wf->kids[i]), chk.normalize(ctx, wt->kids[i]),
                             print_term(term, ctx.names())};
          throw ObligationFailed(std::move(ob));
        }
      }
      return term;
    }
    std::string l = print_term(chk.normalize(ctx, from), ctx.names());
    std::string r = print_term(chk.normalize(ctx, to), ctx.names());
    throw TypeError(ErrorCode::TypeMismatch, "type mismatch: expected " + r + ", got " + l, l, r);
  }
};

std::size_t count_outer_proofs(const Term& t) {
  std::size_t n = 0;
  switch (t->kind) {
    case Kind::ReflO:
    case Kind::JO:
    case Kind::JBetaO:
    case Kind::Hat:
    case Kind::Tilde:
    case Kind::FunextO:
    case Kind::FunextBetaO:
    case Kind::FunextAppO:
    case Kind::FunextAppBetaO:
      n = 1;
      break;
    default:
      break;
  }
  for (const auto& k : t->kids) n += count_outer_proofs(k);
  return n;
}

}  // namespace

EraseResult erase_to_strict(const Signature& sig, const std::set<std::string>& marks, Context ctx, const Term& t,
                            const Term& expected, const Config& cfg) {
  // The empty name matches no mark, so an empty selection orients nothing.
  std::set<std::string> only = marks.empty() ? std::set<std::string>{""} : marks;
  Checker chk(sig, Mode::erased(only), cfg);
  chk.check_context(ctx);
  Obligations ob;
  chk.set_coercer(&ob);
  EraseResult r;
  if (expected) {
    chk.check_outer_type(ctx, expected);
    chk.check(ctx, t, expected);
    r.type = expected;
  } else {
    r.type = chk.infer(ctx, t);
  }
  r.outer_uses = count_outer_proofs(t);
  return r;
}

// ---------------------------------------------------------------------------

namespace {

bool has_outer(const Term& t) {
  if (is_outer_kind(t->kind)) return true;
  return std::any_of(t->kids.begin(), t->kids.end(), has_outer);
}

Kind inner_kind(Kind k) {
  switch (k) {
    case Kind::IdO:
      return Kind::Id;
    case Kind::ReflO:
      return Kind::Refl;
    case Kind::JO:
      return Kind::J;
    case Kind::JBetaO:
      return Kind::JBeta;
    case Kind::PiO:
      return Kind::Pi;
    case Kind::LamO:
      return Kind::Lam;
    case Kind::AppO:
      return Kind::App;
    case Kind::FunextO:
      return Kind::Funext;
    case Kind::FunextBetaO:
      return Kind::FunextBeta;
    case Kind::FunextAppO:
      return Kind::FunextApp;
    case Kind::FunextAppBetaO:
      return Kind::FunextAppBeta;
    default:
      return k;
  }
}

}  // namespace

Term collapse_to_inner(const Signature& sig, const Term& t) {
  if (!has_outer(t)) return t;
  std::vector<Term> kids;
  kids.reserve(t->kids.size());
  for (const auto& k : t->kids) kids.push_back(collapse_to_inner(sig, k));
  switch (t->kind) {
    case Kind::TmCode:
      return kids[0];
    case Kind::Hat:
    case Kind::Tilde: {
      const MarkDecl* m = sig.find_mark(t->name);
      if (!m || !m->carrier) throw TypeError(ErrorCode::UnknownName, "unknown mark '" + t->name + "'");
      auto rev = reversed(kids);
      Term term = substitute(m->term, rev);
      if (t->kind == Kind::Hat) return term;
      Path p{substitute(m->carrier, rev), substitute(m->lhs, rev), substitute(m->rhs, rev), term};
      return inverse(Layer::Inner, left_unit(Layer::Inner, p)).proof;
    }
    default: {
      Kind k = inner_kind(t->kind);
      return make(k, std::move(kids), t->n, t->name);
    }
  }
}

Context collapse_context(const Signature& sig, const Context& ctx) {
  Context out;
  for (const auto& e : ctx.entries()) {
    Term ty = collapse_to_inner(sig, e.type);
    if (e.kind == CtxEntry::Kind::Inner) {
      out.push(ty, e.name);
    } else {
      Term c = collapse_to_inner(sig, e.center);
      out.push(ty, e.name);
      out.push(id(weaken(ty, 1), weaken(c, 1), var(0)), e.name2);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

const char* word_op_name(OuterWord::Op op) {
  switch (op) {
    case OuterWord::Op::Refl:
      return "refl";
    case OuterWord::Op::Hat:
      return "hat";
    case OuterWord::Op::Tilde:
      return "tilde";
    case OuterWord::Op::Inverse:
      return "inverse";
    case OuterWord::Op::Compose:
      return "compose";
  }
  return "?";
}

namespace {

constexpr Layer O = Layer::Outer;

// Proof trees for the groupoid-law prover.
struct PW;
using P = std::shared_ptr<const PW>;
struct PW {
  OuterWord::Op op;
  Path path;
  P a, b;
};

P leaf(OuterWord::Op op, Path path) { return std::make_shared<const PW>(PW{op, std::move(path), nullptr, nullptr}); }
P mk_refl(const Term& type, const Term& x) { return leaf(OuterWord::Op::Refl, refl_path(O, type, x)); }
P mk_inv(const P& u) { return std::make_shared<const PW>(PW{OuterWord::Op::Inverse, inverse(O, u->path), u, nullptr}); }
P mk_comp(const P& u, const P& v) {
  return std::make_shared<const PW>(PW{OuterWord::Op::Compose, compose(O, u->path, v->path), u, v});
}

using Eq = std::optional<Path>;

Eq then(const Eq& a, const Path& b) { return a ? compose(O, *a, b) : b; }

struct Step {
  P w;
  Eq eq;  // from the input word to w
};

bool same(const P& a, const P& b) { return a->path.proof == b->path.proof; }

// compose u v = refl, when u and v are mutually inverse.
std::optional<std::pair<P, Path>> cancel(const P& u, const P& v) {
  if (v->op == OuterWord::Op::Inverse && same(v->a, u))
    return std::make_pair(mk_refl(u->path.type, u->path.lhs), right_inverse(O, u->path));
  if (u->op == OuterWord::Op::Inverse && same(u->a, v))
    return std::make_pair(mk_refl(v->path.type, v->path.rhs), left_inverse(O, v->path));
  return std::nullopt;
}

Step simp_inv(const P& u, Eq eq) {
  if (u->op == OuterWord::Op::Refl) return {u, then(eq, inverse_refl(O, u->path.type, u->path.lhs))};
  if (u->op == OuterWord::Op::Inverse) return {u->a, then(eq, inverse_inverse(O, u->a->path))};
  return {mk_inv(u), eq};
}

// Normal form of compose u v for normal u and v: right-nested, no units, no
// adjacent inverse pairs.
Step simp_comp(const P& u, const P& v, Eq eq) {
  if (v->op == OuterWord::Op::Refl) return {u, then(eq, right_unit(O, u->path))};
  if (u->op == OuterWord::Op::Refl) return {v, then(eq, left_unit(O, v->path))};
  if (u->op == OuterWord::Op::Compose) {
    eq = then(eq, associate(O, u->a->path, u->b->path, v->path));
    Step inner = simp_comp(u->b, v, std::nullopt);
    if (inner.eq) eq = then(eq, whisker_right(O, u->a->path, *inner.eq));
    return simp_comp(u->a, inner.w, eq);
  }
  if (auto c = cancel(u, v)) return {c->first, then(eq, c->second)};
  if (v->op == OuterWord::Op::Compose) {
    if (auto c = cancel(u, v->a)) {
      eq = then(eq, inverse(O, associate(O, u->path, v->a->path, v->b->path)));
      eq = then(eq, whisker_left(O, c->second, v->b->path));
      return {v->b, then(eq, left_unit(O, v->b->path))};
    }
  }
  return {mk_comp(u, v), eq};
}

Step norm(const P& w) {
  switch (w->op) {
    case OuterWord::Op::Inverse: {
      Step s = norm(w->a);
      Eq eq;
      if (s.eq) eq = ap_inverse(O, *s.eq);
      return simp_inv(s.w, eq);
    }
    case OuterWord::Op::Compose: {
      Step su = norm(w->a), sv = norm(w->b);
      Eq eq;
      if (su.eq) eq = whisker_left(O, *su.eq, w->b->path);
      if (sv.eq) eq = then(eq, whisker_right(O, su.w->path, *sv.eq));
      return simp_comp(su.w, sv.w, eq);
    }
    default:
      return {w, std::nullopt};
  }
}

class WordBuilder {
 public:
  struct Ends {
    Term type, lhs, rhs;
  };

  WordBuilder(const Signature& sig, AcyclicityVerdict& v, const Config& cfg)
      : sig_(sig), v_(v), cfg_(cfg), chk_(sig, Mode::two_level(), cfg) {}

  // Throws FragmentBudget when the words exceed the cap.
  void build(unsigned depth) {
    letters();
    for (unsigned k = 2; k <= depth; ++k) level(k);
  }

  P tree(std::size_t i) const {
    const OuterWord& w = v_.words[i];
    switch (w.op) {
      case OuterWord::Op::Inverse:
        return mk_inv(tree(w.left));
      case OuterWord::Op::Compose:
        return mk_comp(tree(w.left), tree(w.right));
      default:
        return leaf(w.op, w.path);
    }
  }

  Checker& checker() { return chk_; }
  Context& ctx() { return ctx_; }
  const std::vector<Ends>& ends() const { return ends_; }

 private:
  Term nf(const Term& t) { return chk_.normalize(ctx_, t); }

  void add(OuterWord w) {
    Term key = nf(w.path.proof);
    if (!seen_.insert(key.get()).second) return;
    keep_.push_back(key);
    ends_.push_back(Ends{nf(w.path.type), nf(w.path.lhs), nf(w.path.rhs)});
    v_.words.push_back(std::move(w));
    if (v_.inner.size() + v_.words.size() > cfg_.fragment_cap) throw FragmentBudget(cfg_.fragment_cap);
  }

  void letters() {
    const Fragment& f = v_.inner;
    for (std::size_t i = 0; i < f.size(); ++i) {
      std::uint32_t lvl = chk_.type_level(ctx_, f[i].type);
      OuterWord w;
      w.op = OuterWord::Op::Refl;
      w.path = refl_path(O, tm_code(lvl, f[i].type), f[i].key);
      add(std::move(w));
    }
    Checker weak(sig_, Mode::weak(), cfg_);
    for (const auto& m : sig_.marks) {
      if (!m.carrier) continue;
      auto lvl = static_cast<std::uint32_t>(m.level);
      for (const auto& args : telescope_instances(weak, f, m.params)) {
        auto rev = reversed(args);
        Term a = substitute(m.carrier, rev), x = substitute(m.lhs, rev), y = substitute(m.rhs, rev);
        OuterWord h;
        h.op = OuterWord::Op::Hat;
        h.mark = m.name;
        h.args = args;
        h.path = Path{tm_code(lvl, a), x, y, hat(m.name, args)};
        OuterWord t = h;
        t.op = OuterWord::Op::Tilde;
        Term bracket = inner_of_outer_term(lvl, a, x, y, h.path.proof);
        t.path = Path{tm_code(lvl, substitute(m.id_type, rev)), substitute(m.term, rev), bracket, tilde(m.name, args)};
        add(std::move(h));
        add(std::move(t));
      }
    }
  }

  void level(unsigned k) {
    std::size_t n = v_.words.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (v_.words[i].depth != k - 1) continue;
      OuterWord w;
      w.op = OuterWord::Op::Inverse;
      w.depth = k;
      w.left = i;
      w.path = inverse(O, v_.words[i].path);
      add(std::move(w));
    }
    // Composable pairs: same type, matching endpoints, one argument at k-1.
    std::map<std::pair<const Node*, const Node*>, std::vector<std::size_t>> by_start;
    for (std::size_t j = 0; j < n; ++j) by_start[{ends_[j].type.get(), ends_[j].lhs.get()}].push_back(j);
    for (std::size_t i = 0; i < n; ++i) {
      auto it = by_start.find({ends_[i].type.get(), ends_[i].rhs.get()});
      if (it == by_start.end()) continue;
      for (std::size_t j : it->second) {
        if (std::max(v_.words[i].depth, v_.words[j].depth) != k - 1) continue;
        OuterWord w;
        w.op = OuterWord::Op::Compose;
        w.depth = k;
        w.left = i;
        w.right = j;
        w.path = compose(O, v_.words[i].path, v_.words[j].path);
        add(std::move(w));
      }
    }
  }

  const Signature& sig_;
  AcyclicityVerdict& v_;
  Config cfg_;
  Checker chk_;
  Context ctx_;
  std::set<const Node*> seen_;
  std::vector<Term> keep_;
  std::vector<Ends> ends_;
};

}  // namespace

AcyclicityVerdict acyclicity_search(const Signature& sig, unsigned depth, const Config& cfg) {
  AcyclicityVerdict v;
  v.depth = depth;
  EnumOptions opt;
  opt.cfg = cfg;
  try {
    v.inner = enumerate(sig, depth, {}, opt);
  } catch (const FragmentBudget& e) {
    v.reason = e.what();
    v.budget_used = cfg.fragment_cap;
    return v;
  }
  if (depth == 0) {
    v.reason = "empty search space at depth 0";
    return v;
  }
  WordBuilder wb(sig, v, cfg);
  try {
    wb.build(depth);
  } catch (const FragmentBudget& e) {
    v.reason = e.what();
    v.budget_used = v.inner.size() + v.words.size();
    return v;
  }
  v.budget_used = v.inner.size() + v.words.size();
  Checker& chk = wb.checker();
  Context& ctx = wb.ctx();
  for (std::size_t i = 0; i < v.words.size(); ++i) {
    const auto& e = wb.ends()[i];
    if (e.lhs != e.rhs) continue;
    v.loops.push_back(i);
    const OuterWord& w = v.words[i];
    Step s = norm(wb.tree(i));
    bool ok = false;
    Term proof;
    if (s.w->op == OuterWord::Op::Refl) {
      proof = s.eq ? s.eq->proof : refl_o(w.path.proof);
      Term goal = id_o(id_o(w.path.type, w.path.lhs, w.path.lhs), w.path.proof, refl_o(w.path.lhs));
      try {
        chk.check(ctx, proof, goal);
        ok = true;
      } catch (const TypeError&) {
      }
    }
    if (ok) v.table.push_back(Contraction{i, proof});
    else v.uncontracted.push_back(i);
  }
  if (v.loops.empty()) {
    v.reason = "no loops in the fragment";
  } else if (!v.uncontracted.empty()) {
    v.reason = std::to_string(v.uncontracted.size()) + " of " + std::to_string(v.loops.size()) +
               " loops without a contraction";
  } else {
    v.kind = AcyclicityVerdict::Kind::Certified;
  }
  return v;
}

Congruence induced_congruence(const Signature& sig, const AcyclicityVerdict& v, const Config& cfg) {
  if (!v.certified())
    throw RequiresAcyclicity("induced congruence needs a certified acyclicity verdict (" + v.reason + ")");
  std::vector<OuterSeed> seeds;
  for (const auto& w : v.words) {
    if (w.op == OuterWord::Op::Refl) continue;
    if (w.path.type->kind != Kind::TmCode || has_outer(w.path.lhs) || has_outer(w.path.rhs)) continue;
    if (w.path.lhs == w.path.rhs) continue;
    seeds.push_back(OuterSeed{w.path.lhs, w.path.rhs, w.path.proof});
  }
  return generate(sig, v.inner, CongruenceMode::MarkedOnly, cfg, seeds, false);
}

}  // namespace wtt
