#include "oracles.hpp"

#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "wtt/paths.hpp"
#include "wtt/sexpr.hpp"
#include "wtt/two_level.hpp"

#ifndef WTT_CORPUS_DIR
#error "WTT_CORPUS_DIR must point at the corpus directory"
#endif

namespace wtt::oracle {

std::string corpus_path(const std::string& rel) { return std::string(WTT_CORPUS_DIR) + "/" + rel; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Signature load_signature(const std::string& rel) { return signature_from(read_file(corpus_path(rel))); }

Signature signature_from(const std::string& text) { return validate(parse_signature(text)); }

// ---------------------------------------------------------------------------
// Kernel laws

const std::vector<std::string>& law_signatures() {
  static const std::vector<std::string> sigs = {
      "gen A : U 0\ngen x : A\ngen y : A\n",
      "gen A : U 0\ngen B (a A) : U 0\ngen x : A\n",
      "gen A : U 0\ngen x : A\ngen p : (Id A x x)\n",
  };
  return sigs;
}

std::vector<LawSample> law_samples(unsigned depth) {
  std::vector<LawSample> out;
  const auto& sigs = law_signatures();
  for (std::size_t si = 0; si < sigs.size(); ++si) {
    Signature sig = signature_from(sigs[si]);
    Fragment f = enumerate(sig, depth);
    Checker chk(sig, Mode::weak());
    Context ctx;
    auto push = [&](LawSample::Kind k, Term t, Term ty, Term expect = nullptr) {
      out.push_back(LawSample{k, si, std::move(t), std::move(ty), std::move(expect)});
    };
    for (std::size_t i = 0; i < f.size(); ++i) {
      const FragmentTerm& ft = f[i];
      push(LawSample::Kind::Plain, ft.term, ft.type);
      unsigned n = chk.type_level(ctx, ft.type);
      if (n + 1 > chk.config().max_level) continue;
      const Term& t = ft.term;
      const Term& ty = ft.type;
      push(LawSample::Kind::LiftLower, lower(lift(t)), ty, t);
      push(LawSample::Kind::Beta, app(lam(ty, var(0)), t), ty, t);
      push(LawSample::Kind::Beta, app(lam(ty, refl(var(0))), t), id(ty, t, t), refl(t));
      const FragmentTerm& u = f[(i * 7 + 3) % f.size()];
      push(LawSample::Kind::Beta, app(lam(ty, weaken(u.term, 1)), t), u.type, u.term);
      push(LawSample::Kind::JRedex, j(ty, t, weaken(ty, 2), t, t, refl(t)), ty, t);
    }
  }
  return out;
}

std::vector<LawFailure> check_laws(const Signature& sig, const LawSample& s, const Config& cfg) {
  std::vector<LawFailure> fails;
  Checker chk(sig, Mode::weak(), cfg);
  Context ctx;
  const std::string shown = print_term(s.term);
  auto fail = [&](const std::string& law, const std::string& detail) { fails.push_back({law, shown, detail}); };
  try {
    chk.check(ctx, s.term, s.type);
  } catch (const TypeError& e) {
    fail("well-typed", e.what());
    return fails;
  }
  Term w;
  try {
    w = chk.whnf(ctx, s.term);
    chk.check(ctx, w, s.type);
    chk.check(ctx, chk.normalize(ctx, s.term), s.type);
  } catch (const TypeError& e) {
    fail("subject reduction", e.what());
    return fails;
  }
  switch (s.kind) {
    case LawSample::Kind::Plain:
      if (s.term->kind == Kind::J && s.term->kids[5]->kind == Kind::Refl && w->kind != Kind::J)
        fail("no weak J computation", "head became " + std::string(kind_name(w->kind)));
      break;
    case LawSample::Kind::Beta:
    case LawSample::Kind::LiftLower:
      if (!alpha_equal(w, chk.whnf(ctx, s.expect)))
        fail("strict reduction", "whnf is " + print_term(w));
      else if (!alpha_equal(chk.normalize(ctx, s.term), chk.normalize(ctx, s.expect)))
        fail("strict reduction", "normal forms differ");
      break;
    case LawSample::Kind::JRedex:
      if (w->kind != Kind::J) fail("no weak J computation", "whnf is " + print_term(w));
      if (chk.conv(ctx, s.term, s.expect) != Conv::No) fail("no weak J computation", "convertible to the base point");
      break;
  }
  return fails;
}

// ---------------------------------------------------------------------------
// Congruence

const std::vector<CongruenceCase>& congruence_cases() {
  using M = CongruenceMode;
  static const std::vector<CongruenceCase> cases = {
      {"point", "gen A : U 0\ngen x : A\n", M::MarkedOnly, 3},
      {"demo", "gen A : U 0\ngen x : A\ngen y : A\ngen p : (Id A x y)\nmark p\n", M::MarkedOnly, 3},
      {"loop", "gen A : U 0\ngen x : A\ngen p : (Id A x x)\nmark p\n", M::MarkedOnly, 3},
      {"endo", "gen A : U 0\ngen f (a A) : A\ngen x : A\ngen p : (Id A (f x) x)\nmark p\n", M::MarkedOnly, 3},
      {"family", "gen A : U 0\ngen B (a A) : U 0\ngen x : A\ngen b : (B x)\n", M::MarkedOnly, 3},
      {"two_marks", "gen A : U 0\ngen x : A\ngen y : A\ngen p : (Id A x y)\nmark p\nmark r (a A) : (refl a)\n",
       M::MarkedOnly, 3},
      {"uip_free", "gen A : U 0\ngen x : A\ngen y : A\ngen p : (Id A x y)\n", M::UIP, 3},
      {"uip_loop", "gen A : U 0\ngen x : A\ngen p : (Id A x x)\n", M::UIP, 3},
      {"uip_marked", "gen A : U 0\ngen x : A\ngen y : A\ngen p : (Id A y x)\nmark p\n", M::UIP, 3},
      {"jbeta",
       "gen A : U 0\ngen x : A\ngen P (y A) (q (Id A x y)) : U 0\ngen d : (P x (refl x))\n"
       "mark jb : (J-beta A x ((y q) (P y q)) d)\n",
       M::MarkedOnly, 3},
      {"succ", "gen N : U 0\ngen z : N\ngen s (n N) : N\ngen e : (Id N (s z) z)\nmark e\n", M::MarkedOnly, 3},
      {"types", "gen A : U 0\ngen B : U 0\ngen x : A\ngen e : (Id (U 0) A B)\nmark e\n", M::MarkedOnly, 3},
  };
  return cases;
}

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

bool is_j_kind(Kind k) { return k == Kind::J || k == Kind::JBeta || k == Kind::JO || k == Kind::JBetaO; }

// Fragment index of a J motive's argument and the motive's form
// (1 constant, 2 applied), or npos.
std::size_t motive_arg(const Fragment& f, const Term& m, int& form) {
  Term c;
  if (try_strengthen(m, 2, 0, c)) {
    form = 1;
    return f.find(c);
  }
  if (m->kind == Kind::App && m->kids[1] == var(0) && m->kids[0]->kind == Kind::App &&
      m->kids[0]->kids[1] == var(1) && try_strengthen(m->kids[0]->kids[0], 2, 0, c)) {
    form = 2;
    return f.find(c);
  }
  form = 0;
  return Fragment::npos;
}

bool congruent(const Fragment& f, UnionFind& uf, const Term& a, const Term& b) {
  if (a->kind != b->kind || a->n != b->n || a->name != b->name || a->kids.size() != b->kids.size()) return false;
  bool has_arg = false;
  for (std::size_t p = 0; p < a->kids.size(); ++p) {
    const Term& ka = a->kids[p];
    const Term& kb = b->kids[p];
    if (p == 2 && is_j_kind(a->kind)) {
      int fa = 0, fb = 0;
      std::size_t ia = motive_arg(f, ka, fa), ib = motive_arg(f, kb, fb);
      if (ia != Fragment::npos || ib != Fragment::npos) {
        if (ia == Fragment::npos || ib == Fragment::npos || fa != fb || uf.find(ia) != uf.find(ib)) return false;
        has_arg = true;
        continue;
      }
      if (!alpha_equal(ka, kb)) return false;
      continue;
    }
    std::size_t ia = binders_of(a->kind, p) == 0 ? f.find(ka) : Fragment::npos;
    std::size_t ib = binders_of(b->kind, p) == 0 ? f.find(kb) : Fragment::npos;
    if (ia == Fragment::npos && ib == Fragment::npos) {
      if (!alpha_equal(ka, kb)) return false;
      continue;
    }
    if (ia == Fragment::npos || ib == Fragment::npos || uf.find(ia) != uf.find(ib)) return false;
    has_arg = true;
  }
  return has_arg;
}

}  // namespace

std::vector<std::size_t> naive_partition(const Signature& sig, const Fragment& enumerated, const Congruence& c,
                                         const Config& cfg) {
  const Fragment& f = c.fragment;
  UnionFind uf(f.size());
  auto index = [&](const Term& key) {
    std::size_t i = f.find(key);
    if (i == Fragment::npos) throw std::runtime_error("oracle: term missing from the fragment: " + print_term(key));
    return i;
  };

  // Mark instances, replayed over a private copy of the enumerated fragment
  // extended by the types of its terms.
  Fragment own = enumerated;
  Checker chk(sig, enumerated.mode, cfg);
  for (std::size_t i = 0, n = own.size(); i < n; ++i) {
    Term ty = own[i].type;  // extend may reallocate
    if (ty->kind != Kind::U) extend(own, chk, ty, cfg.fragment_cap);
  }
  for (const auto& m : sig.marks) {
    if (!m.lhs) continue;
    for (const auto& args : telescope_instances(chk, own, m.params)) {
      std::vector<Term> rev(args.rbegin(), args.rend());
      Term rhs = substitute(m.rhs, rev);
      std::size_t l, r, t, rf;
      try {
        l = extend(own, chk, substitute(m.lhs, rev), cfg.fragment_cap);
        r = extend(own, chk, rhs, cfg.fragment_cap);
        t = extend(own, chk, substitute(m.term, rev), cfg.fragment_cap);
        rf = extend(own, chk, refl(rhs), cfg.fragment_cap);
      } catch (const TypeError&) {
        continue;
      }
      uf.unite(index(own[l].key), index(own[r].key));
      uf.unite(index(own[t].key), index(own[rf].key));
    }
  }
  for (const auto& tr : c.transports) uf.unite(tr.source, tr.result);

  bool uip = c.mode == CongruenceMode::UIP;
  for (bool changed = true; changed;) {
    changed = false;
    if (uip) {
      for (std::size_t i = 0; i < f.size(); ++i) {
        const Term& ty = f[i].type;
        if (ty->kind != Kind::Id) continue;
        std::size_t a = f.find(ty->kids[1]), b = f.find(ty->kids[2]);
        if (a != Fragment::npos && b != Fragment::npos) changed |= uf.unite(a, b);
      }
    }
    for (std::size_t i = 0; i < f.size(); ++i)
      for (std::size_t k = i + 1; k < f.size(); ++k)
        if (uf.find(i) != uf.find(k) && congruent(f, uf, f[i].key, f[k].key)) changed |= uf.unite(i, k);
  }
  std::vector<std::size_t> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = uf.find(i);
  return out;
}

std::vector<std::size_t> canonical(const Congruence& c) {
  std::vector<std::size_t> out(c.fragment.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = c.find(i);
  return out;
}

// ---------------------------------------------------------------------------
// J-beta

std::string jbeta_base_signature() {
  return "gen A : U 0\ngen x : A\ngen P (y A) (q (Id A x y)) : U 0\ngen d : (P x (refl x))\n"
         "gen B : U 0\ngen b : B\n";
}

std::vector<JBetaInstance> jbeta_instances(const Signature& base, unsigned depth) {
  Fragment f = enumerate(base, depth);
  Checker chk(base, Mode::weak());
  Context ctx;
  std::vector<JBetaInstance> out;
  auto add = [&](const Term& a, const Term& x, const Term& motive, const Term& d) {
    JBetaInstance in{jbeta(a, x, motive, d), j(a, x, motive, d, x, refl(x)), d};
    try {
      chk.infer(ctx, in.jbeta);
    } catch (const TypeError&) {
      return;
    }
    out.push_back(std::move(in));
  };
  for (const Term& a : f.types()) {
    if (a->kind == Kind::U && a->n > 1) continue;
    if (chk.type_level(ctx, a) > 1) continue;
    for (std::size_t xi : f.of_type(a)) {
      const Term& x = f[xi].key;
      // Constant motives C with a point d : C.
      for (const Term& cty : f.types()) {
        if (cty->kind == Kind::U || chk.type_level(ctx, cty) > 1) continue;
        const auto& ds = f.of_type(cty);
        if (ds.empty()) continue;
        add(a, x, weaken(cty, 2), f[ds.front()].key);
      }
    }
  }
  // The applied motive (y q. P y q).
  Term motive = app(app(gen("P"), var(1)), var(0));
  if (base.find_gen("P")) add(gen("A"), gen("x"), motive, gen("d"));
  return out;
}

// ---------------------------------------------------------------------------
// Two-level terms

std::vector<Term> two_level_samples(const Signature& sig, unsigned depth) {
  Fragment f = enumerate(sig, depth);
  Checker inner(sig, Mode::weak());
  Checker outer(sig, Mode::two_level());
  Context ctx;
  std::vector<Term> out;
  auto add = [&](Term t) {
    try {
      outer.infer(ctx, t);
    } catch (const TypeError&) {
      return;
    }
    out.push_back(std::move(t));
  };
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Term& t = f[i].key;
    const Term& ty = f[i].type;
    unsigned n = inner.type_level(ctx, ty);
    add(refl_o(t));
    add(j_o(tm_code(n, ty), t, tm_code(n, weaken(ty, 2)), t, t, refl_o(t)));
    add(jbeta_o(tm_code(n, ty), t, tm_code(n, weaken(ty, 2)), t));
    if (ty->kind != Kind::U) continue;
    add(lam_o(t, refl_o(var(0))));
    add(lam_o(t, var(0)));
    add(lam_o(t, univ(0)));
    add(lam_o(t, univ(1)));
    const auto& small = f.of_type(univ(0));
    if (!small.empty()) add(lam_o(t, weaken(f[small.front()].key, 1)));
    for (std::size_t xi : f.of_type(t)) {
      add(app_o(lam_o(t, refl_o(var(0))), f[xi].key));
      add(app_o(lam_o(t, var(0)), f[xi].key));
    }
  }
  for (const auto& m : sig.marks) {
    for (const auto& args : telescope_instances(inner, f, m.params)) {
      add(hat(m.name, args));
      add(tilde(m.name, args));
      add(refl_o(hat(m.name, args)));
    }
  }
  return out;
}

CollapseCheck check_collapse(const Signature& sig, const Term& t, const Config& cfg) {
  CollapseCheck r;
  Checker outer(sig, Mode::two_level(), cfg);
  Checker inner(sig, Mode::weak(), cfg);
  Context ctx;
  try {
    Term ty = outer.infer(ctx, t);
    Term ct = collapse_to_inner(sig, t);
    Term cty = collapse_to_inner(sig, ty);
    Context cctx = collapse_context(sig, ctx);
    inner.check(cctx, ct, cty);
    Term w = outer.whnf(ctx, ty);
    if (w->kind == Kind::PiO) {
      unsigned n = inner.type_level(cctx, collapse_to_inner(sig, w->kids[0]));
      cctx.push(collapse_to_inner(sig, w->kids[0]));
      unsigned m = inner.type_level(cctx, collapse_to_inner(sig, w->kids[1]));
      cctx.pop();
      unsigned got = inner.type_level(cctx, collapse_to_inner(sig, w));
      r.pi_mixed = n != m;
      if (got != std::max(n, m)) {
        r.detail = "Pi level " + std::to_string(got) + ", expected max(" + std::to_string(n) + ", " +
                   std::to_string(m) + ")";
        return r;
      }
    }
  } catch (const TypeError& e) {
    r.detail = e.what();
    return r;
  }
  r.ok = true;
  return r;
}

}  // namespace wtt::oracle
