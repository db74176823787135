#include "wtt/derived.hpp"

#include <map>
#include <stdexcept>

#include "wtt/typechecker.hpp"

namespace wtt {

Point vars_point(std::size_t k, std::uint32_t offset) {
  Point p;
  p.reserve(k);
  for (std::size_t j = 0; j < k; ++j) p.push_back(var(offset + static_cast<std::uint32_t>(k - 1 - j)));
  return p;
}

Point point_shift(const Point& p, std::uint32_t by, std::uint32_t cutoff) {
  Point out;
  out.reserve(p.size());
  for (const auto& t : p) out.push_back(weaken(t, by, cutoff));
  return out;
}

Telescope tele_shift(const Telescope& t, std::uint32_t by, std::uint32_t cutoff) {
  Telescope out = t;
  for (std::size_t i = 0; i < out.size(); ++i) out[i].type = weaken(t[i].type, by, cutoff + static_cast<std::uint32_t>(i));
  return out;
}

Telescope tele_inst(const Telescope& t, const Point& args) {
  Telescope out = t;
  const std::size_t k = args.size();
  for (std::size_t i = 0; i < t.size(); ++i) {
    std::vector<Term> sub;
    sub.reserve(i + k);
    for (std::size_t j = 0; j < i; ++j) sub.push_back(var(static_cast<std::uint32_t>(j)));
    for (std::size_t s = 0; s < k; ++s) sub.push_back(weaken(args[k - 1 - s], static_cast<std::uint32_t>(i)));
    out[i].type = substitute(t[i].type, sub, static_cast<std::uint32_t>(i));
  }
  return out;
}

Term term_inst(const Term& body, const Point& args) {
  std::vector<Term> sub(args.rbegin(), args.rend());
  return substitute(body, sub);
}

Point point_inst(const Point& fn, const Point& args) {
  Point out;
  out.reserve(fn.size());
  for (const auto& t : fn) out.push_back(term_inst(t, args));
  return out;
}

Point concat(const Point& a, const Point& b) {
  Point out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Telescope tele_slice(const Telescope& t, std::size_t from, std::size_t to) {
  return Telescope(t.begin() + static_cast<std::ptrdiff_t>(from), t.begin() + static_cast<std::ptrdiff_t>(to));
}

namespace {

Telescope tele1(Term t) { return Telescope{TeleEntry{{}, std::move(t), -1}}; }

Point slice(const Point& p, std::size_t from, std::size_t to) {
  return Point(p.begin() + static_cast<std::ptrdiff_t>(from), p.begin() + static_cast<std::ptrdiff_t>(to));
}


}  // namespace

void check_point(Checker& chk, Context& ctx, const Point& p, const Telescope& t) {
  if (p.size() != t.size())
    throw TypeError(ErrorCode::ArityMismatch,
                    "point of length " + std::to_string(p.size()) + " for telescope of length " +
                        std::to_string(t.size()));
  for (std::size_t i = 0; i < p.size(); ++i) chk.check(ctx, p[i], term_inst(t[i].type, slice(p, 0, i)));
}

void check_tele(Checker& chk, Context& ctx, const Telescope& t) {
  std::size_t pushed = 0;
  try {
    for (const auto& e : t) {
      chk.type_level(ctx, e.type);
      ctx.push(e.type, e.name);
      ++pushed;
    }
  } catch (...) {
    ctx.pop(pushed);
    throw;
  }
  ctx.pop(pushed);
}

Telescope ElimStructure::j_type(const Point& y, const Point& p, const Telescope& motive) const {
  return tele_inst(motive, concat(y, p));
}

Telescope ElimStructure::jbeta_type(const Telescope& a, const Point& x, const Telescope& motive,
                                    const Point& d) const {
  Point rx = source().refl(a, x);
  return target().id(tele_inst(motive, concat(x, rx)), j(a, x, motive, d, x, rx), d);
}

// ---------------------------------------------------------------------------
// Base and empty structures

namespace {

class IdBase final : public IdStructure {
 public:
  IdBase() : IdStructure(1) {}
  Telescope id(const Telescope& a, const Point& x, const Point& y) const override {
    return tele1(wtt::id(a[0].type, x[0], y[0]));
  }
  Point refl(const Telescope&, const Point& x) const override { return {wtt::refl(x[0])}; }
};

class ElimBase final : public ElimStructure {
 public:
  ElimBase() : ElimStructure(id_base(), id_base()) {}
  Point j(const Telescope& a, const Point& x, const Telescope& motive, const Point& d, const Point& y,
          const Point& p) const override {
    return {wtt::j(a[0].type, x[0], motive[0].type, d[0], y[0], p[0])};
  }
  Point jbeta(const Telescope& a, const Point& x, const Telescope& motive, const Point& d) const override {
    return {wtt::jbeta(a[0].type, x[0], motive[0].type, d[0])};
  }
};

class IdEmpty final : public IdStructure {
 public:
  IdEmpty() : IdStructure(0) {}
  Telescope id(const Telescope&, const Point&, const Point&) const override { return {}; }
  Point refl(const Telescope&, const Point&) const override { return {}; }
};

class ElimFromEmpty final : public ElimStructure {
 public:
  explicit ElimFromEmpty(IdPtr target) : ElimStructure(id_empty(), std::move(target)) {}
  Point j(const Telescope&, const Point&, const Telescope&, const Point& d, const Point&,
          const Point&) const override {
    return d;
  }
  Point jbeta(const Telescope&, const Point&, const Telescope& motive, const Point& d) const override {
    return target().refl(motive, d);
  }
};

class ElimToEmpty final : public ElimStructure {
 public:
  explicit ElimToEmpty(IdPtr source) : ElimStructure(std::move(source), id_empty()) {}
  Point j(const Telescope&, const Point&, const Telescope&, const Point&, const Point&,
          const Point&) const override {
    return {};
  }
  Point jbeta(const Telescope&, const Point&, const Telescope&, const Point&) const override { return {}; }
};

}  // namespace

IdPtr id_base() {
  static const IdPtr s = std::make_shared<IdBase>();
  return s;
}

ElimPtr elim_base() {
  static const ElimPtr s = std::make_shared<ElimBase>();
  return s;
}

IdPtr id_empty() {
  static const IdPtr s = std::make_shared<IdEmpty>();
  return s;
}

ElimPtr elim_from_empty(IdPtr target) { return std::make_shared<ElimFromEmpty>(std::move(target)); }
ElimPtr elim_to_empty(IdPtr source) { return std::make_shared<ElimToEmpty>(std::move(source)); }

// ---------------------------------------------------------------------------
// Generic path algebra

TelePath to_tele_path(const Path& p) { return TelePath{tele1(p.type), {p.lhs}, {p.rhs}, {p.proof}}; }

Path to_path(const TelePath& p) {
  if (p.type.size() != 1) throw std::invalid_argument("to_path: telescope path of length " + std::to_string(p.type.size()));
  return Path{p.type[0].type, p.lhs[0], p.rhs[0], p.proof[0]};
}

Telescope transport_motive(const Telescope& family, std::size_t n) {
  return tele_shift(family, static_cast<std::uint32_t>(n));
}

Point transport(const ElimStructure& e, const Telescope& a, const Point& x, const Point& y, const Telescope& family,
                const Point& p, const Point& d) {
  return e.j(a, x, transport_motive(family, a.size()), d, y, p);
}

TelePath jbeta_path(const ElimStructure& e, const Telescope& a, const Point& x, const Telescope& motive,
                    const Point& d) {
  Point rx = e.source().refl(a, x);
  return TelePath{tele_inst(motive, concat(x, rx)), e.j(a, x, motive, d, x, rx), d, e.jbeta(a, x, motive, d)};
}

TelePath compose(const ElimStructure& ee, const TelePath& p, const TelePath& q) {
  // J on q based at y, motive (z r. Id x z)
  const std::size_t n = p.type.size();
  const auto w = static_cast<std::uint32_t>(2 * n);
  Telescope motive = ee.target().id(tele_shift(p.type, w), point_shift(p.lhs, w), vars_point(n, static_cast<std::uint32_t>(n)));
  Point proof = ee.j(q.type, q.lhs, motive, p.proof, q.rhs, q.proof);
  return TelePath{p.type, p.lhs, q.rhs, proof};
}

TelePath inverse(const ElimStructure& ee, const TelePath& p) {
  // J on p, motive (y r. Id y x), base refl x
  const std::size_t n = p.type.size();
  const auto w = static_cast<std::uint32_t>(2 * n);
  Telescope motive = ee.target().id(tele_shift(p.type, w), vars_point(n, static_cast<std::uint32_t>(n)), point_shift(p.lhs, w));
  Point proof = ee.j(p.type, p.lhs, motive, ee.target().refl(p.type, p.lhs), p.rhs, p.proof);
  return TelePath{p.type, p.rhs, p.lhs, proof};
}

TelePath ap(const ElimStructure& e, const TelePath& p, const Point& fn, const Telescope& cod) {
  const std::size_t n = p.type.size();
  const auto w = static_cast<std::uint32_t>(2 * n);
  Point fu = point_inst(fn, p.lhs);
  Point fv = point_inst(fn, p.rhs);
  // fn is over Γ + n; in Γ + 2n its argument is the y block.
  Point fy = point_shift(fn, static_cast<std::uint32_t>(n));
  Telescope motive = e.target().id(tele_shift(cod, w), point_shift(fu, w), fy);
  Point proof = e.j(p.type, p.lhs, motive, e.target().refl(cod, fu), p.rhs, p.proof);
  return TelePath{cod, fu, fv, proof};
}

namespace {

Path base_inverse(const Path& p) { return to_path(inverse(*elim_base(), to_tele_path(p))); }

// transport (r^-1) (transport r d) = d for r : Id a b c and d : family[b].
TelePath roundtrip(const ElimStructure& e, const ElimStructure& ee, const Term& a, const Term& b, const Term& c,
                   const Telescope& family, const Term& r, const Point& d) {
  const Telescope ta = tele1(a);
  const Telescope fam_b = tele_inst(family, {b});
  // The two-step transport as a function of (c', r').
  auto twice = [&](std::uint32_t w, const Term& c2, const Term& r2) {
    Telescope aw = tele1(weaken(a, w));
    Telescope famw = tele_shift(family, w, 1);
    Point inner = transport(e, aw, {weaken(b, w)}, {c2}, famw, {r2}, point_shift(d, w));
    Path inv = base_inverse(Path{weaken(a, w), weaken(b, w), c2, r2});
    return transport(e, aw, {c2}, {weaken(b, w)}, famw, {inv.proof}, inner);
  };
  Telescope motive = e.target().id(tele_shift(fam_b, 2), twice(2, var(1), var(0)), point_shift(d, 2));

  // Base case at refl b.
  Term rb = refl(b);
  Path inv_rb = base_inverse(Path{a, b, b, rb});
  TelePath tr_refl = jbeta_path(e, ta, {b}, transport_motive(family, 1), d);
  const std::size_t ne = fam_b.size();
  const auto wn = static_cast<std::uint32_t>(ne);
  Point fn1 = transport(e, tele1(weaken(a, wn)), {weaken(b, wn)}, {weaken(b, wn)}, tele_shift(family, wn, 1),
                        {weaken(inv_rb.proof, wn)}, vars_point(ne));
  TelePath s1 = ap(ee, tr_refl, fn1, fam_b);
  Path inv_beta = witness_inverse_refl(a, b);
  Point fn2 = transport(e, tele1(weaken(a, 1)), {weaken(b, 1)}, {weaken(b, 1)}, tele_shift(family, 1, 1), {var(0)},
                        point_shift(d, 1));
  TelePath s2 = ap(e, to_tele_path(inv_beta), fn2, fam_b);
  TelePath base = compose(ee, compose(ee, s1, s2), tr_refl);
  Point proof = e.j(ta, {b}, motive, base.proof, {c}, {r});
  return TelePath{fam_b, twice(0, c, r), d, proof};
}

}  // namespace

Path witness_inverse_refl(const Term& a, const Term& x) {
  Term motive = id(weaken(a, 2), var(1), weaken(x, 2));
  return jbeta_path(Layer::Inner, a, x, motive, refl(x));
}

Path witness_compose_refl(const Path& p) {
  Term motive = id(weaken(p.type, 2), weaken(p.lhs, 2), var(1));
  return jbeta_path(Layer::Inner, p.type, p.rhs, motive, p.proof);
}

Path witness_inverse_inverse(const Path& q) {
  const Term& a = q.type;
  const Term& x = q.lhs;
  // motive (y r. Id (Id a x y) r (r^-1)^-1)
  Path rv{weaken(a, 2), weaken(x, 2), var(1), var(0)};
  Term motive = id(id(weaken(a, 2), weaken(x, 2), var(1)), var(0), base_inverse(base_inverse(rv)).proof);
  // At refl: (refl^-1)^-1 -> refl^-1 -> refl, then reversed.
  Path beta = witness_inverse_refl(a, x);
  Path fn_arg{weaken(a, 1), weaken(x, 1), weaken(x, 1), var(0)};
  Term fn = base_inverse(fn_arg).proof;
  Path s1 = ap(Layer::Inner, beta, fn, id(a, x, x));
  Path back = base_inverse(compose(Layer::Inner, s1, beta));
  Term proof = j(a, x, motive, back.proof, q.rhs, q.proof);
  return Path{id(a, x, q.rhs), q.proof, base_inverse(base_inverse(q)).proof, proof};
}

TelePath transport_cancel(const ElimStructure& e, const ElimStructure& ee, const Term& a, const Term& x,
                          const Term& y, const Telescope& family, const Term& q, const Point& d) {
  Path qp{a, x, y, q};
  Path invq = base_inverse(qp);
  Point xd = transport(e, tele1(a), {y}, {x}, family, {invq.proof}, d);
  Path ii = witness_inverse_inverse(qp);
  Point fn = transport(e, tele1(weaken(a, 1)), {weaken(x, 1)}, {weaken(y, 1)}, tele_shift(family, 1, 1), {var(0)},
                       point_shift(xd, 1));
  Telescope fam_y = tele_inst(family, {y});
  TelePath t1 = ap(e, to_tele_path(ii), fn, fam_y);
  TelePath t2 = roundtrip(e, ee, a, y, x, family, invq.proof, d);
  return compose(ee, t1, t2);
}

Path witness_transport_roundtrip(const Term& a, const Term& x, const Term& y, const Term& family, const Term& p,
                                 const Term& d) {
  return to_path(roundtrip(*elim_base(), *elim_base(), a, x, y, tele1(family), p, {d}));
}

Path witness_happly_compose(const Term& f_type, const Path& p, const Path& q, const Term& a) {
  const Term& f = p.lhs;
  const Term& g = p.rhs;
  const Term& bcod = f_type->kids[1];
  Term ba = inst1(bcod, a);
  auto happly_path = [&](std::uint32_t w, const Term& from, const Term& to, const Term& proof) {
    Term ft = weaken(f_type, w);
    Term aw = weaken(a, w);
    return Path{weaken(ba, w), app(from, aw), app(to, aw), happly(Layer::Inner, ft, from, to, proof, aw)};
  };
  // motive (h r. Id K (happly (p . r) a) (happly p a . happly r a))
  Path pw{weaken(f_type, 2), weaken(f, 2), weaken(g, 2), weaken(p.proof, 2)};
  Path rw{weaken(f_type, 2), weaken(g, 2), var(1), var(0)};
  Path pr = compose(Layer::Inner, pw, rw);
  Term lhs_m = happly(Layer::Inner, weaken(f_type, 2), weaken(f, 2), var(1), pr.proof, weaken(a, 2));
  Path hp2 = happly_path(2, weaken(f, 2), weaken(g, 2), weaken(p.proof, 2));
  Path hr2 = happly_path(2, weaken(g, 2), var(1), var(0));
  Term k = id(weaken(ba, 2), app(weaken(f, 2), weaken(a, 2)), app(var(1), weaken(a, 2)));
  Term motive = id(k, lhs_m, compose(Layer::Inner, hp2, hr2).proof);

  // Base case at refl g.
  Path cr = witness_compose_refl(p);
  Term fn1 = happly(Layer::Inner, weaken(f_type, 1), weaken(f, 1), weaken(g, 1), var(0), weaken(a, 1));
  Term kfg = id(ba, app(f, a), app(g, a));
  Path s1 = ap(Layer::Inner, cr, fn1, kfg);
  Path hp = happly_path(0, f, g, p.proof);
  Term ga = app(g, a);
  Term hmotive = id(weaken(ba, 2), app(weaken(g, 2), weaken(a, 2)), app(var(1), weaken(a, 2)));
  Path hbeta = jbeta_path(Layer::Inner, f_type, g, hmotive, refl(ga));
  Path hp1{weaken(hp.type, 1), weaken(hp.lhs, 1), weaken(hp.rhs, 1), weaken(hp.proof, 1)};
  Path var_path{weaken(ba, 1), weaken(ga, 1), weaken(ga, 1), var(0)};
  Term fn2 = compose(Layer::Inner, hp1, var_path).proof;
  Path t1 = ap(Layer::Inner, hbeta, fn2, kfg);
  Path t2 = witness_compose_refl(hp);
  Path t = compose(Layer::Inner, t1, t2);
  Path base = compose(Layer::Inner, s1, base_inverse(t));
  Term proof = j(f_type, g, motive, base.proof, q.rhs, q.proof);
  Path hq = happly_path(0, g, q.rhs, q.proof);
  Path pq = compose(Layer::Inner, p, q);
  Term lhs = happly(Layer::Inner, f_type, f, q.rhs, pq.proof, a);
  return Path{id(ba, app(f, a), app(q.rhs, a)), lhs, compose(Layer::Inner, hp, hq).proof, proof};
}

// ---------------------------------------------------------------------------
// Joins

namespace {

class IdJoin final : public IdStructure {
 public:
  IdJoin(IdPtr c, IdPtr d, ElimPtr cd)
      : IdStructure(c->length() + d->length()), c_(std::move(c)), d_(std::move(d)), cd_(std::move(cd)) {}

  Telescope id(const Telescope& a, const Point& x, const Point& y) const override {
    const std::size_t nc = c_->length();
    Telescope ta = tele_slice(a, 0, nc);
    Telescope tb = tele_slice(a, nc, a.size());
    Point xc = slice(x, 0, nc), xd = slice(x, nc, x.size());
    Point yc = slice(y, 0, nc), yd = slice(y, nc, y.size());
    Telescope out = c_->id(ta, xc, yc);
    // Second block over the variables pc of the first.
    const auto w = static_cast<std::uint32_t>(nc);
    Telescope bw = tele_shift(tb, w, w);
    Point t = transport(*cd_, tele_shift(ta, w), point_shift(xc, w), point_shift(yc, w), bw, vars_point(nc),
                        point_shift(xd, w));
    Telescope second = d_->id(tele_inst(bw, point_shift(yc, w)), t, point_shift(yd, w));
    out.insert(out.end(), second.begin(), second.end());
    return out;
  }

  Point refl(const Telescope& a, const Point& x) const override {
    const std::size_t nc = c_->length();
    Telescope ta = tele_slice(a, 0, nc);
    Telescope tb = tele_slice(a, nc, a.size());
    Point xc = slice(x, 0, nc), xd = slice(x, nc, x.size());
    return concat(c_->refl(ta, xc), cd_->jbeta(ta, xc, transport_motive(tb, nc), xd));
  }

 private:
  IdPtr c_;
  IdPtr d_;
  ElimPtr cd_;
};

// J from C * D into single types E.
class ElimJoinLeft final : public ElimStructure {
 public:
  ElimJoinLeft(ElimPtr cd, ElimPtr ce, ElimPtr de)
      : ElimStructure(id_join(cd->source_ptr(), cd->target_ptr(), cd), ce->target_ptr()),
        cd_(std::move(cd)),
        ce_(std::move(ce)),
        de_(std::move(de)) {}

  Point j(const Telescope& a, const Point& x, const Telescope& motive, const Point& d, const Point& y,
          const Point& p) const override {
    Parts s(*this, a, x, motive);
    const std::size_t nc = s.nc;
    Point yc = slice(y, 0, nc), yd = slice(y, nc, y.size());
    Point pc = slice(p, 0, nc), pd = slice(p, nc, p.size());
    Term d0 = app(s.j_pi(s.xd, s.rho), d[0]);
    Point d1 = ce_->j(s.ta, s.xc, s.motive2(), {d0}, yc, pc);
    return de_->j(tele_inst(s.tb, yc), s.t_of(yc, pc), s.motive1(yc, pc), d1, yd, pd);
  }

  Point jbeta(const Telescope& a, const Point& x, const Telescope& motive, const Point& d) const override {
    Parts s(*this, a, x, motive);
    const std::size_t nd = s.nd;
    Term d0 = app(s.j_pi(s.xd, s.rho), d[0]);
    // J-beta of the C step, pushed through F(xd, rho, -).
    TelePath bc = jbeta_path(*ce_, s.ta, s.xc, s.motive2(), {d0});
    Telescope m1 = s.motive1(s.xc, s.reflc);
    Term q_t0 = s.q_at(s.t0, s.refl_t0);
    Point fn = de_->j(tele_shift(s.bx, 1), point_shift(s.t0, 1), tele_shift(m1, 1, static_cast<std::uint32_t>(2 * nd)),
                      {var(0)}, point_shift(s.xd, 1), point_shift(s.rho, 1));
    TelePath s1 = ap(*elim_base(), bc, fn, tele1(s.q_at(s.xd, s.rho)));
    // Lemma: F(u, r, G(u, r, z)) = z for every (u, r) and z, by J with a Π motive.
    const auto w0 = static_cast<std::uint32_t>(2 * nd);
    Point uv = vars_point(nd, static_cast<std::uint32_t>(nd));
    Point rv = vars_point(nd);
    Term dom = s.q_in(w0, uv, rv);
    const std::uint32_t w = w0 + 1;
    Point uw = point_shift(uv, 1), rw = point_shift(rv, 1);
    Term g = app(s.j_pi_in(w, uw, rw), var(0));
    Point f = de_->j(tele_shift(s.bx, w), point_shift(s.t0, w), tele_shift(m1, w, w0), {g}, uw, rw);
    Telescope motive_l = tele1(pi(dom, id(weaken(dom, 1), f[0], var(0))));
    // Base case at (t0, refl).
    Term g0 = app(s.j_pi_in(1, point_shift(s.t0, 1), point_shift(s.refl_t0, 1)), var(0));
    TelePath a1 = jbeta_path(*de_, tele_shift(s.bx, 1), point_shift(s.t0, 1), tele_shift(m1, 1, w0), {g0});
    TelePath bpi = jbeta_path(*de_, tele_shift(s.bx, 1), point_shift(s.t0, 1), tele_shift(s.motive_pi(), 1, w0),
                              {weaken(s.base_pi(), 1)});
    Term q0w = weaken(q_t0, 1);
    TelePath a2 = ap(*elim_base(), bpi, {app(var(0), var(1))}, tele1(q0w));
    a2.rhs = {var(0)};
    TelePath lb = compose(*elim_base(), a1, a2);
    Term base_l = lam(q_t0, lb.proof[0]);
    Term lem = de_->j(s.bx, s.t0, motive_l, {base_l}, s.xd, s.rho)[0];
    TelePath s2{tele1(s.q_at(s.xd, s.rho)), s1.rhs, d, {app(lem, d[0])}};
    return compose(*elim_base(), s1, s2).proof;
  }

 private:
  // Shared pieces of one instance (a, x, motive).
  struct Parts {
    const ElimJoinLeft& self;
    std::size_t nc, nd;
    Telescope ta, tb, bx;
    Point xc, xd, reflc, rho, t0, refl_t0;
    const Telescope& motive;

    Parts(const ElimJoinLeft& s, const Telescope& a, const Point& x, const Telescope& m)
        : self(s), nc(s.cd_->source().length()), nd(s.cd_->target().length()), motive(m) {
      ta = tele_slice(a, 0, nc);
      tb = tele_slice(a, nc, a.size());
      xc = slice(x, 0, nc);
      xd = slice(x, nc, x.size());
      reflc = s.cd_->source().refl(ta, xc);
      rho = s.cd_->jbeta(ta, xc, transport_motive(tb, nc), xd);
      bx = tele_inst(tb, xc);
      t0 = transport(*s.cd_, ta, xc, xc, tb, reflc, xd);
      refl_t0 = s.cd_->target().refl(bx, t0);
    }

    std::uint32_t two_n() const { return static_cast<std::uint32_t>(2 * (nc + nd)); }

    // The motive's single type at (yc, yd, pc, pd), all in Γ + w.
    Term p_at(std::uint32_t w, const Point& yc, const Point& yd, const Point& pc, const Point& pd) const {
      Term body = weaken(motive[0].type, w, two_n());
      return term_inst(body, concat(concat(yc, yd), concat(pc, pd)));
    }

    Point t_of(const Point& yc, const Point& pc) const { return transport(*self.cd_, ta, xc, yc, tb, pc, xd); }

    // (yd' pd'. P yc yd' pc pd')
    Telescope motive1(const Point& yc, const Point& pc) const {
      const auto w = static_cast<std::uint32_t>(2 * nd);
      return tele1(p_at(w, point_shift(yc, w), vars_point(nd, static_cast<std::uint32_t>(nd)), point_shift(pc, w),
                        vars_point(nd)));
    }

    // (yc' pc'. P yc' (t pc') pc' (refl (t pc')))
    Telescope motive2() const {
      const auto w = static_cast<std::uint32_t>(2 * nc);
      Point yc = vars_point(nc, static_cast<std::uint32_t>(nc));
      Point pc = vars_point(nc);
      Telescope taw = tele_shift(ta, w);
      Telescope tbw = tele_shift(tb, w, static_cast<std::uint32_t>(nc));
      Point t = transport(*self.cd_, taw, point_shift(xc, w), yc, tbw, pc, point_shift(xd, w));
      Point rt = self.cd_->target().refl(tele_inst(tbw, yc), t);
      return tele1(p_at(w, yc, t, pc, rt));
    }

    // P xc u reflc r, in Γ + w.
    Term q_in(std::uint32_t w, const Point& u, const Point& r) const {
      return p_at(w, point_shift(xc, w), u, point_shift(reflc, w), r);
    }
    Term q_at(const Point& u, const Point& r) const { return q_in(0, u, r); }

    // (u r. Π (_ : P xc u reflc r) (P xc t0 reflc (refl t0)))
    Telescope motive_pi() const {
      const auto w = static_cast<std::uint32_t>(2 * nd);
      Term dom = q_in(w, vars_point(nd, static_cast<std::uint32_t>(nd)), vars_point(nd));
      return tele1(pi(dom, weaken(q_at(t0, refl_t0), w + 1)));
    }
    Term base_pi() const { return lam(q_at(t0, refl_t0), var(0)); }

    // J over D into the Π motive, in Γ + w, at (u, r).
    Term j_pi_in(std::uint32_t w, const Point& u, const Point& r) const {
      return self.de_->j(tele_shift(bx, w), point_shift(t0, w), tele_shift(motive_pi(), w, static_cast<std::uint32_t>(2 * nd)),
                         {weaken(base_pi(), w)}, u, r)[0];
    }
    Term j_pi(const Point& u, const Point& r) const { return j_pi_in(0, u, r); }
  };

  ElimPtr cd_;
  ElimPtr ce_;
  ElimPtr de_;
};

// J from C into D * E with D single types.
class ElimJoinRight final : public ElimStructure {
 public:
  ElimJoinRight(ElimPtr cd, ElimPtr ce, ElimPtr de, ElimPtr ee)
      : ElimStructure(cd->source_ptr(), id_join(de->source_ptr(), de->target_ptr(), de)),
        cd_(std::move(cd)),
        ce_(std::move(ce)),
        de_(std::move(de)),
        ee_(std::move(ee)) {}

  Point j(const Telescope& a, const Point& x, const Telescope& motive, const Point& d, const Point& y,
          const Point& p) const override {
    Parts s(*this, a, x, motive, d);
    Point j1 = cd_->j(a, x, s.p1, {d[0]}, y, p);
    Point j2 = ce_->j(a, x, s.m2(), s.back, y, p);
    return concat(j1, j2);
  }

  Point jbeta(const Telescope& a, const Point& x, const Telescope& motive, const Point& d) const override {
    Parts s(*this, a, x, motive, d);
    const std::size_t ne = s.fam_d1.size();
    const auto wn = static_cast<std::uint32_t>(ne);
    TelePath b2 = jbeta_path(*ce_, a, x, s.m2(), s.back);
    Point fn = transport(*de_, tele1(weaken(s.dty, wn)), {weaken(s.j1x, wn)}, {weaken(d[0], wn)},
                         tele_shift(s.fam_u, wn, 1), {weaken(s.jb1.proof, wn)}, vars_point(ne));
    TelePath s1 = ap(*ee_, b2, fn, s.fam_d1);
    TelePath s2 = transport_cancel(*de_, *ee_, s.dty, s.j1x, d[0], s.fam_u, s.jb1.proof, s.d2);
    TelePath c = compose(*ee_, s1, s2);
    return concat({s.jb1.proof}, c.proof);
  }

 private:
  struct Parts {
    const ElimJoinRight& self;
    const Telescope& a;
    const Point& x;
    std::size_t n;
    Telescope p1, p2, fam_u, fam_d1;
    Point reflx, d2, back;
    Term dty, j1x;
    Path jb1;

    Parts(const ElimJoinRight& s, const Telescope& a0, const Point& x0, const Telescope& motive, const Point& d)
        : self(s), a(a0), x(x0), n(a0.size()) {
      p1 = tele_slice(motive, 0, 1);
      p2 = tele_slice(motive, 1, motive.size());
      reflx = s.cd_->source().refl(a, x);
      d2 = slice(d, 1, d.size());
      dty = term_inst(p1[0].type, concat(x, reflx));
      j1x = s.cd_->j(a, x, p1, {d[0]}, x, reflx)[0];
      jb1 = to_path(jbeta_path(*s.cd_, a, x, p1, {d[0]}));
      // u |-> P2 x refl u, over Γ + 1.
      const auto k = static_cast<std::uint32_t>(2 * n + 1);
      fam_u = tele_inst(tele_shift(p2, 1, k), concat(point_shift(concat(x, reflx), 1), {var(0)}));
      fam_d1 = tele_inst(fam_u, {d[0]});
      Path inv = base_inverse(jb1);
      back = transport(*s.de_, tele1(dty), {d[0]}, {j1x}, fam_u, {inv.proof}, d2);
    }

    // P2 with u := J1 y p, over Γ + 2n.
    Telescope m2() const {
      const auto w = static_cast<std::uint32_t>(2 * n);
      Point yv = vars_point(n, w / 2);
      Point pv = vars_point(n);
      Point j1 = self.cd_->j(tele_shift(a, w), point_shift(x, w), tele_shift(p1, w, w), {weaken(jb1.rhs, w)}, yv, pv);
      return tele_inst(tele_shift(p2, w, w + 1), concat(vars_point(2 * n), j1));
    }
  };

  ElimPtr cd_;
  ElimPtr ce_;
  ElimPtr de_;
  ElimPtr ee_;
};

}  // namespace

IdPtr id_join(IdPtr c, IdPtr d, ElimPtr c_to_d) {
  if (c_to_d->source().length() != c->length() || c_to_d->target().length() != d->length())
    throw std::invalid_argument("id_join: eliminator does not match the joined families");
  return std::make_shared<IdJoin>(std::move(c), std::move(d), std::move(c_to_d));
}

ElimPtr elim_join_left(ElimPtr c_to_d, ElimPtr c_to_e, ElimPtr d_to_e) {
  if (c_to_e->target().length() != 1 || d_to_e->target().length() != 1)
    throw std::invalid_argument("elim_join_left: target family must be single types");
  if (c_to_e->source().length() != c_to_d->source().length() || d_to_e->source().length() != c_to_d->target().length())
    throw std::invalid_argument("elim_join_left: eliminators do not share their families");
  return std::make_shared<ElimJoinLeft>(std::move(c_to_d), std::move(c_to_e), std::move(d_to_e));
}

ElimPtr elim_join_right(ElimPtr c_to_d, ElimPtr c_to_e, ElimPtr d_to_e, ElimPtr e_to_e) {
  if (c_to_d->target().length() != 1 || d_to_e->source().length() != 1)
    throw std::invalid_argument("elim_join_right: middle family must be single types");
  if (c_to_e->source().length() != c_to_d->source().length() || c_to_e->target().length() != d_to_e->target().length() ||
      e_to_e->source().length() != d_to_e->target().length())
    throw std::invalid_argument("elim_join_right: eliminators do not share their families");
  return std::make_shared<ElimJoinRight>(std::move(c_to_d), std::move(c_to_e), std::move(d_to_e), std::move(e_to_e));
}

IdPtr id_tele(std::size_t n) {
  if (n == 0) return id_empty();
  if (n == 1) return id_base();
  return id_join(id_base(), id_tele(n - 1), elim_tele(1, n - 1));
}

ElimPtr elim_tele(std::size_t n, std::size_t m) {
  static std::map<std::pair<std::size_t, std::size_t>, ElimPtr> memo;
  auto key = std::make_pair(n, m);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  ElimPtr out;
  if (n == 0) {
    out = elim_from_empty(id_tele(m));
  } else if (m == 0) {
    out = elim_to_empty(id_tele(n));
  } else if (n == 1 && m == 1) {
    out = elim_base();
  } else if (m == 1) {
    out = elim_join_left(elim_tele(1, n - 1), elim_tele(1, 1), elim_tele(n - 1, 1));
  } else {
    out = elim_join_right(elim_tele(n, 1), elim_tele(n, m - 1), elim_tele(1, m - 1), elim_tele(m - 1, m - 1));
  }
  memo.emplace(key, out);
  return out;
}

// ---------------------------------------------------------------------------
// Π over lifted telescopes

Point PiStructure::funext_beta(const Telescope&, const Telescope&, const Point&) const {
  throw std::logic_error("funext-beta is not provided by this Π-structure");
}

Point PiStructure::funext_app(const Telescope&, const Telescope&, const Point&, const Point&, const Point&,
                              const Point&) const {
  throw std::logic_error("funext-app is not provided by this Π-structure");
}

Telescope homotopy_type(const PiStructure& s, const IdStructure& cod_id, const Telescope& dom, const Telescope& cod,
                        const Point& f, const Point& g) {
  const auto w = static_cast<std::uint32_t>(dom.size());
  Telescope domw = tele_shift(dom, w);
  Telescope codw = tele_shift(cod, w, w);
  Point a = vars_point(dom.size());
  Point fa = s.app(domw, codw, point_shift(f, w), a);
  Point ga = s.app(domw, codw, point_shift(g, w), a);
  return s.pi(dom, cod_id.id(cod, fa, ga));
}

Telescope PiLiftRight::pi(const Telescope& dom, const Telescope& cod) const {
  return tele1(wtt::pi(dom[0].type, wtt::pi(dom[1].type, cod[0].type)));
}

Point PiLiftRight::lam(const Telescope& dom, const Telescope&, const Point& b) const {
  return {wtt::lam(dom[0].type, wtt::lam(dom[1].type, b[0]))};
}

Point PiLiftRight::app(const Telescope&, const Telescope&, const Point& f, const Point& a) const {
  return {wtt::app(wtt::app(f[0], a[0]), a[1])};
}

Point PiLiftRight::funext(const Telescope& dom, const Telescope&, const Point& f, const Point& g,
                          const Point& h) const {
  Term inner = wtt::funext(wtt::app(weaken(f[0], 1), var(0)), wtt::app(weaken(g[0], 1), var(0)),
                           wtt::app(weaken(h[0], 1), var(0)));
  return {wtt::funext(f[0], g[0], wtt::lam(dom[0].type, inner))};
}

Point PiLiftRight::funext_beta(const Telescope& dom, const Telescope& cod, const Point& f) const {
  const Term& ta = dom[0].type;
  const Term& tb = dom[1].type;
  Term pi1 = wtt::pi(tb, cod[0].type);
  Term fall = wtt::pi(ta, pi1);
  Term h0 = wtt::lam(ta, wtt::lam(tb, wtt::refl(wtt::app(wtt::app(weaken(f[0], 2), var(1)), var(0)))));
  Term fa = wtt::app(weaken(f[0], 1), var(0));
  Term l1 = wtt::lam(ta, wtt::funext(fa, fa, wtt::app(weaken(h0, 1), var(0))));
  Term l2 = wtt::lam(ta, wtt::refl(fa));
  Term hh = wtt::lam(ta, wtt::funext_beta(fa));
  Term carrier = wtt::pi(ta, id(pi1, fa, fa));
  Path q{carrier, l1, l2, wtt::funext(l1, l2, hh)};
  Term fn = wtt::funext(weaken(f[0], 1), weaken(f[0], 1), var(0));
  Term e = id(fall, f[0], f[0]);
  Path s1 = wtt::ap(Layer::Inner, q, fn, e);
  Path s2{e, wtt::funext(f[0], f[0], l2), wtt::refl(f[0]), wtt::funext_beta(f[0])};
  return {wtt::compose(Layer::Inner, s1, s2).proof};
}

Point PiLiftRight::happly(const Telescope& dom, const Telescope& cod, const Point& f, const Point& g, const Point& p,
                          const Point& a) const {
  Term fall = pi(dom, cod)[0].type;
  Term fa_ty = term_inst(cod[0].type, a);
  Point a2 = point_shift(a, 2);
  Term motive = id(weaken(fa_ty, 2), app(dom, cod, point_shift(f, 2), a2)[0], app(dom, cod, {var(1)}, a2)[0]);
  return {j(fall, f[0], motive, refl(app(dom, cod, f, a)[0]), g[0], p[0])};
}

Point PiLiftRight::funext_app(const Telescope& dom, const Telescope& cod, const Point& f, const Point& g,
                              const Point& h, const Point& a) const {
  const Term& ta = dom[0].type;
  Term fall = pi(dom, cod)[0].type;
  Term pi1 = wtt::pi(dom[1].type, cod[0].type);
  Term pi1a = inst1(pi1, a[0]);
  Term fa_ty = term_inst(cod[0].type, a);
  Term fa1 = wtt::app(f[0], a[0]);
  Term ga1 = wtt::app(g[0], a[0]);
  // happly_CD q a = happly (happly q a1) a2, by J on q.
  auto two_step = [&](std::uint32_t w, const Term& to, const Term& q) {
    Term h1 = wtt::happly(Layer::Inner, weaken(fall, w), weaken(f[0], w), to, q, weaken(a[0], w));
    return wtt::happly(Layer::Inner, weaken(pi1a, w), wtt::app(weaken(f[0], w), weaken(a[0], w)),
                       wtt::app(to, weaken(a[0], w)), h1, weaken(a[1], w));
  };
  Point a2 = point_shift(a, 2);
  Term kq = id(weaken(fa_ty, 2), app(dom, cod, point_shift(f, 2), a2)[0], app(dom, cod, {var(1)}, a2)[0]);
  Term motive = id(kq, happly(tele_shift(dom, 2), tele_shift(cod, 2, 2), point_shift(f, 2), {var(1)}, {var(0)}, a2)[0],
                   two_step(2, var(1), var(0)));
  Term fa = app(dom, cod, f, a)[0];
  Term kf = id(fa_ty, fa, fa);
  Term hm_cd = id(weaken(fa_ty, 2), app(dom, cod, point_shift(f, 2), a2)[0], app(dom, cod, {var(1)}, a2)[0]);
  Path jb_cd = jbeta_path(Layer::Inner, fall, f[0], hm_cd, refl(fa));
  // happly f f refl a1 -> refl (f a1)
  Term hmot1 = id(weaken(pi1a, 2), wtt::app(weaken(f[0], 2), weaken(a[0], 2)), wtt::app(var(1), weaken(a[0], 2)));
  Path hb1 = jbeta_path(Layer::Inner, fall, f[0], hmot1, refl(fa1));
  Term fn = wtt::happly(Layer::Inner, weaken(pi1a, 1), weaken(fa1, 1), weaken(fa1, 1), var(0), weaken(a[1], 1));
  Path st = wtt::ap(Layer::Inner, hb1, fn, kf);
  Term hmot2 = id(weaken(fa_ty, 2), wtt::app(weaken(fa1, 2), weaken(a[1], 2)), wtt::app(var(1), weaken(a[1], 2)));
  Path hb2 = jbeta_path(Layer::Inner, pi1a, fa1, hmot2, refl(wtt::app(fa1, a[1])));
  Path base = wtt::compose(Layer::Inner, jb_cd, base_inverse(wtt::compose(Layer::Inner, st, hb2)));
  Term hh = wtt::lam(ta, wtt::funext(wtt::app(weaken(f[0], 1), var(0)), wtt::app(weaken(g[0], 1), var(0)),
                                     wtt::app(weaken(h[0], 1), var(0))));
  Term fe = wtt::funext(f[0], g[0], hh);
  Term kfg = id(fa_ty, fa, app(dom, cod, g, a)[0]);
  Path p1{kfg, happly(dom, cod, f, g, {fe}, a)[0], two_step(0, g[0], fe), j(fall, f[0], motive, base.proof, g[0], fe)};
  // ap (happly - a2) (funext-app f g H a1)
  Term fapp_ty = id(pi1a, fa1, ga1);
  Path fapp{fapp_ty, wtt::happly(Layer::Inner, fall, f[0], g[0], fe, a[0]), wtt::app(hh, a[0]),
            wtt::funext_app(f[0], g[0], hh, a[0])};
  Term fn2 = wtt::happly(Layer::Inner, weaken(pi1a, 1), weaken(fa1, 1), weaken(ga1, 1), var(0), weaken(a[1], 1));
  Path p2 = wtt::ap(Layer::Inner, fapp, fn2, kfg);
  Term ha1 = wtt::app(h[0], a[0]);
  Term inner_fe = wtt::funext(fa1, ga1, ha1);
  Path p3{kfg, wtt::happly(Layer::Inner, pi1a, fa1, ga1, inner_fe, a[1]), wtt::app(ha1, a[1]),
          wtt::funext_app(fa1, ga1, ha1, a[1])};
  return {wtt::chain(Layer::Inner, {p1, p2, p3}).proof};
}

Telescope PiLiftLeft::pi(const Telescope& dom, const Telescope& cod) const {
  const Term& ta = dom[0].type;
  Term b2 = substitute(cod[1].type, {wtt::app(var(1), var(0)), var(0)}, 2);
  return Telescope{TeleEntry{{}, wtt::pi(ta, cod[0].type), -1}, TeleEntry{{}, wtt::pi(weaken(ta, 1), b2), -1}};
}

Point PiLiftLeft::lam(const Telescope& dom, const Telescope&, const Point& b) const {
  return {wtt::lam(dom[0].type, b[0]), wtt::lam(dom[0].type, b[1])};
}

Point PiLiftLeft::app(const Telescope&, const Telescope&, const Point& f, const Point& a) const {
  return {wtt::app(f[0], a[0]), wtt::app(f[1], a[0])};
}

Point PiLiftLeft::funext(const Telescope& dom, const Telescope& cod, const Point& f, const Point& g,
                         const Point& h) const {
  const Term& ta = dom[0].type;
  const Term& b1 = cod[0].type;   // over Γ, a
  const Term& b2 = cod[1].type;   // over Γ, a, u
  Telescope ptele = pi(dom, cod);
  Term pi1 = ptele[0].type;
  Term q1 = wtt::funext(f[0], g[0], h[0]);
  Telescope fam2 = tele_slice(ptele, 1, 2);  // over Γ, f1
  Point t = transport(*elim_base(), tele1(pi1), {f[0]}, {g[0]}, fam2, {q1}, {f[1]});

  // Under the binder a (Γ + 1).
  auto w1 = [](const Term& x) { return weaken(x, 1); };
  Term a = var(0);
  Term f1a = wtt::app(w1(f[0]), a), g1a = wtt::app(w1(g[0]), a), f2a = wtt::app(w1(f[1]), a);
  Term b1a = b1;  // already over Γ, a
  // u |-> B2 a u, over Γ + a + u
  Telescope fam_u = tele1(b2);
  auto tr_u = [&](std::uint32_t w, const Term& from, const Term& to, const Term& r, const Term& d) {
    return transport(*elim_base(), tele1(weaken(b1a, w)), {from}, {to}, tele_shift(fam_u, w, 1), {r}, {d})[0];
  };
  Term b2g = inst1(b2, g1a);
  Term b2f = inst1(b2, f1a);
  Term q1w = w1(q1);
  Term pi1w = w1(pi1);
  // C(a): app (transport q f2) a = transport (happly q a) (f2 a), by J on q.
  Term fam2_body_w = weaken(fam2[0].type, 1, 1);  // over Γ, a, f1
  auto c_lhs = [&](std::uint32_t w, const Term& to, const Term& q) {
    Telescope fam2w = tele1(weaken(fam2_body_w, w, 1));
    Term tq = transport(*elim_base(), tele1(weaken(pi1w, w)), {weaken(w1(f[0]), w)}, {to}, fam2w, {q},
                        {weaken(w1(f[1]), w)})[0];
    return wtt::app(tq, weaken(a, w));
  };
  auto c_rhs = [&](std::uint32_t w, const Term& to, const Term& q) {
    Term hq = wtt::happly(Layer::Inner, weaken(pi1w, w), weaken(w1(f[0]), w), to, q, weaken(a, w));
    return tr_u(w, weaken(f1a, w), wtt::app(to, weaken(a, w)), hq, weaken(f2a, w));
  };
  // B2 a (g' a), over Γ, a, g', r
  Term b2_gp = substitute(b2, {wtt::app(var(1), var(2)), var(2)}, 3);
  Term motive_c = id(b2_gp, c_lhs(2, var(1), var(0)), c_rhs(2, var(1), var(0)));
  // Base at refl f1.
  TelePath trj = jbeta_path(*elim_base(), tele1(pi1w), {w1(f[0])}, transport_motive(tele1(fam2_body_w), 1), {w1(f[1])});
  Path s1 = wtt::ap(Layer::Inner, to_path(trj), wtt::app(var(0), weaken(a, 1)), b2f);
  Term hmot = id(weaken(b1a, 2), wtt::app(weaken(w1(f[0]), 2), weaken(a, 2)), wtt::app(var(1), weaken(a, 2)));
  Path hb = jbeta_path(Layer::Inner, pi1w, w1(f[0]), hmot, refl(f1a));
  Term fn_r = tr_u(1, weaken(f1a, 1), weaken(f1a, 1), var(0), weaken(f2a, 1));
  Path s2 = wtt::ap(Layer::Inner, hb, fn_r, b2f);
  TelePath s3 = jbeta_path(*elim_base(), tele1(b1a), {f1a}, transport_motive(fam_u, 1), {f2a});
  Path cbase = wtt::compose(Layer::Inner, s1, base_inverse(wtt::compose(Layer::Inner, s2, to_path(s3))));
  Term cproof = j(pi1w, w1(f[0]), motive_c, cbase.proof, w1(g[0]), q1w);
  Path cpath{b2g, c_lhs(0, w1(g[0]), q1w), c_rhs(0, w1(g[0]), q1w), cproof};
  // D(a): transport (happly q1 a) f2a = transport (h1 a) f2a, via funext-app.
  Term h1a = wtt::app(w1(h[0]), a);
  Path fa{id(b1a, f1a, g1a), wtt::happly(Layer::Inner, pi1w, w1(f[0]), w1(g[0]), q1w, a), h1a,
          wtt::funext_app(w1(f[0]), w1(g[0]), w1(h[0]), a)};
  Term fn_d = tr_u(1, weaken(f1a, 1), weaken(g1a, 1), var(0), weaken(f2a, 1));
  Path dpath = wtt::ap(Layer::Inner, fa, fn_d, b2g);
  // E(a) = h2 a.
  Term g2a = wtt::app(w1(g[1]), a);
  Path epath{b2g, tr_u(0, f1a, g1a, h1a, f2a), g2a, wtt::app(w1(h[1]), a)};
  Path hom = wtt::chain(Layer::Inner, {cpath, dpath, epath});
  Term q2 = wtt::funext(t[0], g[1], wtt::lam(ta, hom.proof));
  return {q1, q2};
}

// ---------------------------------------------------------------------------
// Parametrized eliminator

namespace {

Term frob_motive(const Telescope& delta, const Term& motive) {
  Term m = motive;
  for (std::size_t i = delta.size(); i-- > 0;) m = pi(delta[i].type, m);
  return m;
}

Term frob_base(const Telescope& delta_x, const Term& d) {
  Term b = d;
  for (std::size_t i = delta_x.size(); i-- > 0;) b = lam(delta_x[i].type, b);
  return b;
}

Term apply_all(Term f, const Point& args) {
  for (const auto& a : args) f = app(f, a);
  return f;
}

}  // namespace

Term frobenius_j(const Term& a, const Term& x, const Telescope& delta, const Term& motive, const Term& d,
                 const Term& y, const Term& p, const Point& args) {
  if (delta.empty()) return j(a, x, motive, d, y, p);
  Telescope dx = tele_inst(delta, {x, refl(x)});
  Term jt = j(a, x, frob_motive(delta, motive), frob_base(dx, d), y, p);
  return apply_all(jt, args);
}

Path frobenius_jbeta(const Term& a, const Term& x, const Telescope& delta, const Term& motive, const Term& d,
                     const Point& args) {
  if (delta.empty()) return jbeta_path(Layer::Inner, a, x, motive, d);
  Telescope dx = tele_inst(delta, {x, refl(x)});
  Path jb = jbeta_path(Layer::Inner, a, x, frob_motive(delta, motive), frob_base(dx, d));
  Term cod = term_inst(motive, concat({x, refl(x)}, args));
  Term fn = apply_all(var(0), point_shift(args, 1));
  Path out = ap(Layer::Inner, jb, fn, cod);
  out.rhs = term_inst(d, args);
  return out;
}

}  // namespace wtt
