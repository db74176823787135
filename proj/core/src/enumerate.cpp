#include <algorithm>

#include "wtt/fragment.hpp"

namespace wtt {

std::size_t Fragment::find(const Term& key) const {
  auto it = by_key_.find(key.get());
  return it == by_key_.end() ? npos : it->second;
}

const std::vector<std::size_t>& Fragment::of_type(const Term& type) const {
  static const std::vector<std::size_t> none;
  auto it = by_type_.find(type.get());
  return it == by_type_.end() ? none : it->second;
}

std::size_t Fragment::insert(FragmentTerm ft) {
  std::size_t idx = terms.size();
  by_key_.emplace(ft.key.get(), idx);
  auto& bucket = by_type_[ft.type.get()];
  if (bucket.empty()) type_order_.push_back(ft.type);
  bucket.push_back(idx);
  terms.push_back(std::move(ft));
  return idx;
}

FragmentTerm classify(Checker& chk, Context& ctx, const Term& t) {
  FragmentTerm ft;
  ft.term = t;
  ft.type = chk.normalize(ctx, chk.infer(ctx, t));
  ft.key = chk.normalize(ctx, t);
  return ft;
}

namespace {

std::vector<Term> reversed(const std::vector<Term>& v) { return {v.rbegin(), v.rend()}; }

bool is_universe(const Term& t) { return t->kind == Kind::U; }

class Enumerator {
 public:
  Enumerator(const Signature& sig, Checker& chk, Context& ctx, Fragment& f, std::size_t cap)
      : sig_(sig), chk_(chk), ctx_(ctx), f_(f), cap_(cap) {}

  void level(unsigned k) {
    k_ = k;
    limit_ = f_.size();
    if (k == 1) {
      for (std::size_t i = ctx_.size(); i-- > 0;) add(var(static_cast<std::uint32_t>(i)), 0);
      add(univ(0), 0);
    }
    for (const auto& g : sig_.gens) {
      std::vector<Term> args;
      spine(g, args, 0);
    }
    if (k == 1) return;
    for (std::size_t i = 0; i < limit_; ++i) {
      if (f_[i].depth != k - 1) continue;
      add(refl(f_[i].term), f_[i].depth);
    }
    for (std::size_t t = 0; t < limit_; ++t) {
      if (!is_universe(f_[t].type)) continue;
      ids(t);
      eliminators(t);
    }
    for (std::size_t fi = 0; fi < limit_; ++fi) {
      Term fty = f_[fi].type;
      if (fty->kind != Kind::Pi) continue;
      for (std::size_t a : pool(fty->kids[0])) add(app(f_[fi].term, f_[a].term), std::max(f_[fi].depth, f_[a].depth));
    }
  }

 private:
  std::vector<std::size_t> pool(const Term& type) const {
    std::vector<std::size_t> out;
    for (std::size_t i : f_.of_type(type))
      if (i < limit_) out.push_back(i);
    return out;
  }

  Term nf(const Term& t) { return chk_.normalize(ctx_, t); }

  // Adds a candidate built from arguments of depth at most `deepest`.
  void add(const Term& t, unsigned deepest) {
    if (k_ > 1 && deepest != k_ - 1) return;
    FragmentTerm ft;
    try {
      ft = classify(chk_, ctx_, t);
    } catch (const TypeError&) {
      return;
    }
    if (f_.find(ft.key) != Fragment::npos) return;
    ft.depth = k_;
    f_.insert(std::move(ft));
    if (f_.size() > cap_) throw FragmentBudget(cap_);
  }

  void spine(const GenDecl& g, std::vector<Term>& args, unsigned deepest) {
    std::size_t i = args.size();
    if (i == g.params.size()) {
      add(gen(g.name, args), deepest);
      return;
    }
    if (k_ == 1) return;
    Term expected = nf(substitute(g.params[i].type, reversed(args)));
    for (std::size_t a : pool(expected)) {
      args.push_back(f_[a].term);
      spine(g, args, std::max(deepest, f_[a].depth));
      args.pop_back();
    }
  }

  void ids(std::size_t t) {
    Term a = f_[t].key;
    for (std::size_t x : pool(a))
      for (std::size_t y : pool(a))
        add(id(f_[t].term, f_[x].term, f_[y].term), std::max({f_[t].depth, f_[x].depth, f_[y].depth}));
  }

  struct Motive {
    Term motive;
    Term base;  // type of d, as a normal form
    unsigned depth;
  };

  std::vector<Motive> motives(std::size_t t, std::size_t x) {
    std::vector<Motive> out;
    Term a = f_[t].key;
    Term xv = f_[x].key;
    for (std::size_t c = 0; c < limit_; ++c)
      if (is_universe(f_[c].type)) out.push_back({weaken(f_[c].term, 2), f_[c].key, f_[c].depth});
    for (std::size_t p = 0; p < limit_; ++p) {
      const Term& pty = f_[p].type;
      if (pty->kind != Kind::Pi || pty->kids[1]->kind != Kind::Pi) continue;
      const Term& u = pty->kids[1]->kids[1];
      if (!is_universe(u)) continue;
      Term expected = pi(a, pi(id(weaken(a, 1), weaken(xv, 1), var(0)), u));
      if (nf(expected) != pty) continue;
      Term base = nf(app(app(f_[p].term, f_[x].term), refl(f_[x].term)));
      out.push_back({app(app(weaken(f_[p].term, 2), var(1)), var(0)), base, f_[p].depth});
    }
    return out;
  }

  void eliminators(std::size_t t) {
    Term a = f_[t].key;
    for (std::size_t x : pool(a)) {
      std::vector<Motive> ms = motives(t, x);
      unsigned dx = std::max(f_[t].depth, f_[x].depth);
      for (const auto& m : ms) {
        for (std::size_t d : pool(m.base)) {
          unsigned dd = std::max({dx, m.depth, f_[d].depth});
          add(jbeta(f_[t].term, f_[x].term, m.motive, f_[d].term), dd);
          for (std::size_t y : pool(a)) {
            Term idt = nf(id(f_[t].term, f_[x].term, f_[y].term));
            for (std::size_t p : pool(idt))
              add(j(f_[t].term, f_[x].term, m.motive, f_[d].term, f_[y].term, f_[p].term),
                  std::max({dd, f_[y].depth, f_[p].depth}));
          }
        }
      }
    }
  }

  const Signature& sig_;
  Checker& chk_;
  Context& ctx_;
  Fragment& f_;
  std::size_t cap_;
  unsigned k_ = 0;
  std::size_t limit_ = 0;
};

}  // namespace

Fragment enumerate(const Signature& sig, unsigned depth, const Context& ctx, const EnumOptions& opt) {
  Fragment f;
  f.depth = depth;
  f.mode = opt.mode;
  f.ctx = ctx;
  if (depth == 0) return f;
  Checker chk(sig, opt.mode, opt.cfg);
  Context work = ctx;
  Enumerator e(sig, chk, work, f, opt.cfg.fragment_cap);
  for (unsigned k = 1; k <= depth; ++k) e.level(k);
  return f;
}

std::size_t extend(Fragment& f, Checker& chk, const Term& t, std::size_t cap) {
  Context ctx = f.ctx;
  FragmentTerm ft = classify(chk, ctx, t);
  std::size_t found = f.find(ft.key);
  if (found != Fragment::npos) return found;
  unsigned depth = 0;
  for (std::size_t i = 0; i < t->kids.size(); ++i) {
    if (binders_of(t->kind, i) != 0) continue;
    std::size_t k = extend(f, chk, t->kids[i], cap);
    depth = std::max(depth, f[k].depth);
  }
  ft.depth = depth + 1;
  ft.extension = true;
  std::size_t idx = f.insert(std::move(ft));
  if (f.size() > cap) throw FragmentBudget(cap);
  return idx;
}

namespace {

void instances_rec(Checker& chk, Context& ctx, const Fragment& f, const Telescope& params, std::vector<Term>& args,
                   std::vector<std::vector<Term>>& out) {
  std::size_t i = args.size();
  if (i == params.size()) {
    out.push_back(args);
    return;
  }
  Term expected = chk.normalize(ctx, substitute(params[i].type, reversed(args)));
  for (std::size_t a : f.of_type(expected)) {
    args.push_back(f[a].term);
    instances_rec(chk, ctx, f, params, args, out);
    args.pop_back();
  }
}

}  // namespace

std::vector<std::vector<Term>> telescope_instances(Checker& chk, const Fragment& f, const Telescope& params) {
  std::vector<std::vector<Term>> out;
  std::vector<Term> args;
  Context ctx = f.ctx;
  instances_rec(chk, ctx, f, params, args, out);
  return out;
}

}  // namespace wtt
