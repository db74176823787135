#include "wtt/strictify.hpp"

#include <algorithm>
#include <optional>

#include "wtt/sexpr.hpp"

namespace wtt {

namespace {

std::vector<Term> reversed(const std::vector<Term>& v) { return {v.rbegin(), v.rend()}; }

Mode strong_over(const std::set<std::string>& marks) { return Mode::strong(marks); }

}  // namespace

StrictDerivation record_derivation(const Signature& sig, Context ctx, const Term& term, const Term& type,
                                   const std::set<std::string>& marks, const Config& cfg) {
  StrictDerivation d;
  d.ctx = ctx;
  d.term = term;
  d.type = type;
  d.marks = marks;
  Checker chk(sig, strong_over(marks), cfg);
  chk.set_trace(&d.trace);
  chk.check_context(ctx);
  if (type) {
    chk.type_level(ctx, type);
    chk.check(ctx, term, type);
  } else {
    chk.infer(ctx, term);
  }
  return d;
}

bool replay(const Signature& sig, const StrictDerivation& d, const Config& cfg) {
  std::set<std::string> used;
  for (const auto& e : d.trace) used.insert(e.mark);
  // The empty name matches no mark: a trace-free judgement must hold weakly.
  if (used.empty()) used.insert("");
  Checker chk(sig, Mode::strong(used), cfg);
  try {
    Context ctx = d.ctx;
    chk.check_context(ctx);
    if (d.type) chk.check(ctx, d.term, d.type);
    else chk.infer(ctx, d.term);
    return true;
  } catch (const TypeError&) {
    return false;
  }
}

namespace {

class Rewriter {
 public:
  Rewriter(const Signature& sig, const std::set<std::string>& marks, const Config& cfg)
      : sig_(sig), weak_(sig, Mode::weak(), cfg), strong_(sig, strong_over(marks), cfg), budget_(cfg.rewrite_budget) {}

  // Path from t to its rewritten form; nullopt when nothing changes.
  std::optional<Path> path(Context& ctx, const Term& t) {
    if (is_outer_kind(t->kind)) throw UnsupportedMark("outer term in a strict derivation");
    Term ty = weak_.infer(ctx, t);
    Term cur = weak_.whnf(ctx, t);
    std::optional<Path> acc;
    auto push = [&](const Path& step) { acc = acc ? compose(Layer::Inner, *acc, step) : step; };
    for (std::size_t i = 0; i < cur->kids.size(); ++i) {
      if (binders_of(cur->kind, i) != 0) continue;
      if (cur->kind == Kind::U) break;
      auto kp = path(ctx, cur->kids[i]);
      if (!kp) continue;
      Term hole = hole_at(cur, i);
      Term cod;
      ctx.push(kp->type);
      try {
        cod = weak_.infer(ctx, hole);
      } catch (const TypeError& e) {
        ctx.pop();
        throw UnsupportedMark(std::string("rewrite below a ") + kind_name(cur->kind) + " breaks typing: " + e.what());
      }
      ctx.pop();
      Term cod0;
      if (!try_strengthen(cod, 1, 0, cod0))
        throw UnsupportedMark(std::string("rewrite at a dependent position of ") + kind_name(cur->kind));
      push(ap(Layer::Inner, *kp, hole, cod0));
      cur = weak_.whnf(ctx, inst1(hole, kp->rhs));
    }
    RewriteEvent ev;
    Term out;
    if (strong_.rewrite_head(ctx, cur, out, &ev, true)) {
      if (++steps_ > budget_)
        throw TypeError(ErrorCode::BudgetExceeded, "rewrite budget exhausted while building a transport path");
      const MarkDecl* m = sig_.find_mark(ev.mark);
      auto rev = reversed(ev.instance);
      Path step{substitute(m->carrier, rev), substitute(m->lhs, rev), substitute(m->rhs, rev),
                substitute(m->term, rev)};
      if (weak_.conv(ctx, step.lhs, cur) != Conv::Yes)
        throw UnsupportedMark("mark '" + ev.mark + "' matched only up to a mark-term rewrite");
      if (weak_.conv(ctx, step.type, ty) != Conv::Yes)
        throw UnsupportedMark("mark '" + ev.mark + "' relates terms of another type");
      step.type = ty;
      step.lhs = cur;
      used(ev.mark);
      push(step);
      if (auto rest = path(ctx, step.rhs)) push(*rest);
    }
    if (acc) acc->lhs = t;
    return acc;
  }

  Checker& weak() { return weak_; }
  const std::vector<std::string>& marks_used() const { return used_; }

 private:
  // t with kid i abstracted as Var 0 of a fresh outermost binder.
  static Term hole_at(const Term& t, std::size_t i) {
    std::vector<Term> kids;
    for (std::size_t j = 0; j < t->kids.size(); ++j) {
      if (j == i) kids.push_back(var(0));
      else kids.push_back(weaken(t->kids[j], 1, static_cast<std::uint32_t>(binders_of(t->kind, j))));
    }
    return with_kids(t, std::move(kids));
  }

  void used(const std::string& m) {
    if (std::find(used_.begin(), used_.end(), m) == used_.end()) used_.push_back(m);
  }

  const Signature& sig_;
  Checker weak_;
  Checker strong_;
  std::size_t budget_;
  std::size_t steps_ = 0;
  std::vector<std::string> used_;
};

class Transporter : public Coercer {
 public:
  explicit Transporter(Rewriter& rw) : rw_(rw) {}

  Term coerce(Checker& chk, Context& ctx, const Term& term, const Term& from, const Term& to) override {
    Path e = type_path(chk, ctx, from, to);
    unsigned lvl = chk.type_level(ctx, from);
    ++transports;
    return transport(Layer::Inner, univ(lvl), from, to, var(0), e.proof, term);
  }

  Term expose(Checker& chk, Context& ctx, const Term& type) override {
    (void)chk;
    auto p = rw_.path(ctx, type);
    return p ? p->rhs : type;
  }

  std::size_t transports = 0;

 private:
  Path type_path(Checker& chk, Context& ctx, const Term& from, const Term& to) {
    auto pf = rw_.path(ctx, from);
    auto pt = rw_.path(ctx, to);
    Term ef = pf ? pf->rhs : from, et = pt ? pt->rhs : to;
    if (chk.conv(ctx, ef, et) != Conv::Yes)
      throw UnsupportedMark("types " + print_term(chk.normalize(ctx, from), ctx.names()) + " and " +
                            print_term(chk.normalize(ctx, to), ctx.names()) +
                            " have no common form under the oriented marks");
    Term u = univ(chk.type_level(ctx, from));
    Path a = pf ? *pf : refl_path(Layer::Inner, u, from);
    Path b = pt ? inverse(Layer::Inner, *pt) : refl_path(Layer::Inner, u, to);
    a.type = u;
    b.type = u;
    return compose(Layer::Inner, a, b);
  }

  Rewriter& rw_;
};

}  // namespace

Path rewrite_path(const Signature& sig, Context& ctx, const Term& t, const std::set<std::string>& marks,
                  const Config& cfg) {
  Rewriter rw(sig, marks, cfg);
  auto p = rw.path(ctx, t);
  if (p) return *p;
  return refl_path(Layer::Inner, rw.weak().infer(ctx, t), t);
}

LiftResult strictify_translate(const Signature& sig, const StrictDerivation& d, const Config& cfg) {
  LiftResult r;
  Rewriter rw(sig, d.marks, cfg);
  Transporter tr(rw);
  Checker weak(sig, Mode::weak(), cfg);
  weak.set_coercer(&tr);
  try {
    for (const auto& e : d.ctx.entries()) {
      if (e.kind != CtxEntry::Kind::Inner) throw UnsupportedMark("outer context entry in a strict derivation");
      Term ty = weak.type_elab(r.ctx0, e.type);
      r.ctx0.push(ty, e.name);
    }
    if (d.type) {
      r.type0 = weak.type_elab(r.ctx0, d.type);
      r.t0 = weak.check_elab(r.ctx0, d.term, r.type0);
    } else {
      Typed ty = weak.infer_elab(r.ctx0, d.term);
      r.t0 = ty.term;
      r.type0 = ty.type;
    }
  } catch (const TypeError& e) {
    if (e.code() != ErrorCode::BudgetExceeded && e.code() != ErrorCode::Undecided) throw;
    r.reason = e.what();
    return r;
  }
  r.transports = tr.transports;
  r.marks_used = rw.marks_used();

  // Soundness: both outputs check in Weak mode, with no elaboration.
  Checker plain(sig, Mode::weak(), cfg);
  plain.check_context(r.ctx0);
  plain.check(r.ctx0, r.t0, r.type0);
  r.witness = refl(r.t0);
  r.witness_type = id(r.type0, r.t0, r.t0);
  plain.check(r.ctx0, r.witness, r.witness_type);

  // Round trip: Strong mode identifies t0 with the original term.
  Checker strong(sig, strong_over(d.marks), cfg);
  try {
    Term type = d.type ? d.type : strong.infer(r.ctx0, d.term);
    strong.check(r.ctx0, r.witness, id(type, r.t0, d.term));
    r.round_trip = true;
  } catch (const TypeError& e) {
    r.reason = std::string("round trip: ") + e.what();
    return r;
  }
  r.status = LiftResult::Status::Lifted;
  return r;
}

LiftingReport check_weak_lifting(const Signature& sig, unsigned depth, const Config& cfg) {
  EnumOptions opt;
  opt.mode = Mode::strong();
  opt.cfg = cfg;
  Fragment f = enumerate(sig, depth, {}, opt);
  LiftingReport rep;
  for (std::size_t i = 0; i < f.size(); ++i) {
    ++rep.terms;
    const Term& t = f[i].term;
    try {
      StrictDerivation d = record_derivation(sig, f.ctx, t, nullptr, {}, cfg);
      LiftResult r = strictify_translate(sig, d, cfg);
      if (r.lifted()) {
        ++rep.lifted;
        rep.transports += r.transports;
      } else {
        ++rep.unknown;
        rep.failures.push_back(print_term(t) + ": " + r.reason);
      }
    } catch (const UnsupportedMark& e) {
      ++rep.unsupported;
      rep.failures.push_back(print_term(t) + ": " + e.what());
    } catch (const TypeError& e) {
      ++rep.unknown;
      rep.failures.push_back(print_term(t) + ": " + e.what());
    }
  }
  return rep;
}

}  // namespace wtt
