#include "wtt/paths.hpp"

#include <stdexcept>

namespace wtt {

Term id_l(Layer l, Term a, Term x, Term y) {
  return l == Layer::Inner ? id(std::move(a), std::move(x), std::move(y)) : id_o(std::move(a), std::move(x), std::move(y));
}
Term refl_l(Layer l, Term x) { return l == Layer::Inner ? refl(std::move(x)) : refl_o(std::move(x)); }
Term j_l(Layer l, Term a, Term x, Term motive, Term d, Term y, Term p) {
  return l == Layer::Inner ? j(a, x, motive, d, y, p) : j_o(a, x, motive, d, y, p);
}
Term jbeta_l(Layer l, Term a, Term x, Term motive, Term d) {
  return l == Layer::Inner ? jbeta(a, x, motive, d) : jbeta_o(a, x, motive, d);
}
Term pi_l(Layer l, Term a, Term body) { return l == Layer::Inner ? pi(a, body) : pi_o(a, body); }
Term lam_l(Layer l, Term a, Term body) { return l == Layer::Inner ? lam(a, body) : lam_o(a, body); }
Term app_l(Layer l, Term f, Term a) { return l == Layer::Inner ? app(f, a) : app_o(f, a); }
Term funext_l(Layer l, Term f, Term g, Term h) { return l == Layer::Inner ? funext(f, g, h) : funext_o(f, g, h); }
Term funext_beta_l(Layer l, Term f) { return l == Layer::Inner ? funext_beta(f) : funext_beta_o(f); }

Term inst1(const Term& body, const Term& a) { return substitute(body, {a}); }
Term inst2(const Term& motive, const Term& y, const Term& q) { return substitute(motive, {q, y}); }
Term family_to_motive(const Term& family) { return substitute(family, {var(1)}, 2); }

Term transport(Layer l, Term a, Term x, Term y, Term family, Term p, Term d) {
  return j_l(l, std::move(a), std::move(x), family_to_motive(family), std::move(d), std::move(y), std::move(p));
}

Term happly(Layer l, Term f_type, Term f, Term g, Term p, Term a) {
  // motive (g' q. Id (B a) (app f a) (app g' a)) over the singleton at f
  const Term& b = f_type->kids[1];
  Term ba = weaken(inst1(b, a), 2);
  Term motive = id_l(l, ba, app_l(l, weaken(f, 2), weaken(a, 2)), app_l(l, var(1), weaken(a, 2)));
  Term d = refl_l(l, app_l(l, f, a));
  return j_l(l, f_type, f, motive, d, g, p);
}

Path refl_path(Layer l, Term type, Term x) { return Path{type, x, x, refl_l(l, x)}; }

Path jbeta_path(Layer l, Term a, Term x, Term motive, Term d) {
  Term ty = inst2(motive, x, refl_l(l, x));
  Term lhs = j_l(l, a, x, motive, d, x, refl_l(l, x));
  return Path{ty, lhs, d, jbeta_l(l, a, x, motive, d)};
}

Path compose(Layer l, const Path& p, const Path& q) {
  // J A y (z r. Id A x z) p z q
  Term motive = id_l(l, weaken(p.type, 2), weaken(p.lhs, 2), var(1));
  Term proof = j_l(l, q.type, q.lhs, motive, p.proof, q.rhs, q.proof);
  return Path{p.type, p.lhs, q.rhs, proof};
}

Path inverse(Layer l, const Path& p) {
  // J A x (y r. Id A y x) (refl x) y p
  Term motive = id_l(l, weaken(p.type, 2), var(1), weaken(p.lhs, 2));
  Term proof = j_l(l, p.type, p.lhs, motive, refl_l(l, p.lhs), p.rhs, p.proof);
  return Path{p.type, p.rhs, p.lhs, proof};
}

Path ap(Layer l, const Path& p, const Term& fn, const Term& cod) {
  Term fu = inst1(fn, p.lhs);
  Term fv = inst1(fn, p.rhs);
  // J A u (v r. Id B (f u) (f v)) (refl (f u)) v p
  Term motive = id_l(l, weaken(cod, 2), weaken(fu, 2), substitute(fn, {var(1)}, 2));
  Term proof = j_l(l, p.type, p.lhs, motive, refl_l(l, fu), p.rhs, p.proof);
  return Path{cod, fu, fv, proof};
}

Path chain(Layer l, const std::vector<Path>& steps) {
  if (steps.empty()) throw std::invalid_argument("chain: no steps");
  Path acc = steps[0];
  for (std::size_t i = 1; i < steps.size(); ++i) acc = compose(l, acc, steps[i]);
  return acc;
}

namespace {

Path shift(const Path& p, std::uint32_t by) {
  return Path{weaken(p.type, by), weaken(p.lhs, by), weaken(p.rhs, by), weaken(p.proof, by)};
}

// The generic path (z, r) bound by a J motive over paths from a.
Path generic(const Path& p) { return Path{weaken(p.type, 2), weaken(p.lhs, 2), var(1), var(0)}; }

// Path between two paths of type Id T a b; endpoints of the equation.
Term path_type(Layer l, const Path& p) { return id_l(l, p.type, p.lhs, p.rhs); }

}  // namespace

Path right_unit(Layer l, const Path& p) {
  Term mc = id_l(l, weaken(p.type, 2), weaken(p.lhs, 2), var(1));
  Path jb = jbeta_path(l, p.type, p.rhs, mc, p.proof);
  return Path{path_type(l, p), jb.lhs, p.proof, jb.proof};
}

Path left_unit(Layer l, const Path& p) {
  Path g = generic(p);
  Term motive = id_l(l, path_type(l, g), compose(l, refl_path(l, g.type, g.lhs), g).proof, var(0));
  Path base = right_unit(l, refl_path(l, p.type, p.lhs));
  Term proof = j_l(l, p.type, p.lhs, motive, base.proof, p.rhs, p.proof);
  return Path{path_type(l, p), compose(l, refl_path(l, p.type, p.lhs), p).proof, p.proof, proof};
}

Path inverse_refl(Layer l, Term type, Term x) {
  Path r = refl_path(l, type, x);
  Term mi = id_l(l, weaken(type, 2), var(1), weaken(x, 2));
  Path jb = jbeta_path(l, type, x, mi, r.proof);
  return Path{path_type(l, r), jb.lhs, r.proof, jb.proof};
}

Path ap_inverse(Layer l, const Path& e) {
  // e : Id (Id T a b) u u'
  const Term& pty = e.type;
  Path z{weaken(pty->kids[0], 1), weaken(pty->kids[1], 1), weaken(pty->kids[2], 1), var(0)};
  Term fn = inverse(l, z).proof;
  Term cod = id_l(l, pty->kids[0], pty->kids[2], pty->kids[1]);
  return ap(l, e, fn, cod);
}

Path whisker_left(Layer l, const Path& e, const Path& q) {
  const Term& pty = e.type;
  Path z{weaken(pty->kids[0], 1), weaken(pty->kids[1], 1), weaken(pty->kids[2], 1), var(0)};
  Term fn = compose(l, z, shift(q, 1)).proof;
  Term cod = id_l(l, pty->kids[0], pty->kids[1], q.rhs);
  return ap(l, e, fn, cod);
}

Path whisker_right(Layer l, const Path& p, const Path& e) {
  const Term& pty = e.type;
  Path z{weaken(pty->kids[0], 1), weaken(pty->kids[1], 1), weaken(pty->kids[2], 1), var(0)};
  Term fn = compose(l, shift(p, 1), z).proof;
  Term cod = id_l(l, pty->kids[0], p.lhs, pty->kids[2]);
  return ap(l, e, fn, cod);
}

Path right_inverse(Layer l, const Path& p) {
  Path g = generic(p);
  Path gt = refl_path(l, g.type, g.lhs);
  Term motive = id_l(l, path_type(l, gt), compose(l, g, inverse(l, g)).proof, gt.proof);
  Path r = refl_path(l, p.type, p.lhs);
  Path base = compose(l, whisker_right(l, r, inverse_refl(l, p.type, p.lhs)), right_unit(l, r));
  Term proof = j_l(l, p.type, p.lhs, motive, base.proof, p.rhs, p.proof);
  Path out = refl_path(l, p.type, p.lhs);
  return Path{path_type(l, out), compose(l, p, inverse(l, p)).proof, out.proof, proof};
}

Path left_inverse(Layer l, const Path& p) {
  Path g = generic(p);
  Path gt = refl_path(l, g.type, g.rhs);
  Term motive = id_l(l, path_type(l, gt), compose(l, inverse(l, g), g).proof, gt.proof);
  Path r = refl_path(l, p.type, p.lhs);
  Path base = compose(l, right_unit(l, inverse(l, r)), inverse_refl(l, p.type, p.lhs));
  Term proof = j_l(l, p.type, p.lhs, motive, base.proof, p.rhs, p.proof);
  Path out = refl_path(l, p.type, p.rhs);
  return Path{path_type(l, out), compose(l, inverse(l, p), p).proof, out.proof, proof};
}

Path inverse_inverse(Layer l, const Path& p) {
  Path g = generic(p);
  Term motive = id_l(l, path_type(l, g), inverse(l, inverse(l, g)).proof, var(0));
  Path r = refl_path(l, p.type, p.lhs);
  Path base = compose(l, ap_inverse(l, inverse_refl(l, p.type, p.lhs)), inverse_refl(l, p.type, p.lhs));
  Term proof = j_l(l, p.type, p.lhs, motive, base.proof, p.rhs, p.proof);
  return Path{path_type(l, p), inverse(l, inverse(l, p)).proof, p.proof, proof};
}

Path associate(Layer l, const Path& p, const Path& q, const Path& r) {
  // J on r based at q.rhs; p and q are constant in the motive.
  Path p2 = shift(p, 2), q2 = shift(q, 2);
  Path g{weaken(r.type, 2), weaken(r.lhs, 2), var(1), var(0)};
  Path lhs2 = compose(l, compose(l, p2, q2), g);
  Path rhs2 = compose(l, p2, compose(l, q2, g));
  Term motive = id_l(l, id_l(l, lhs2.type, lhs2.lhs, lhs2.rhs), lhs2.proof, rhs2.proof);
  Path pq = compose(l, p, q);
  // compose pq refl = pq = compose p q <- compose p (compose q refl)
  Path back = inverse(l, whisker_right(l, p, right_unit(l, q)));
  Path base = compose(l, right_unit(l, pq), back);
  Term proof = j_l(l, r.type, r.lhs, motive, base.proof, r.rhs, r.proof);
  Path lhs = compose(l, pq, r);
  Path rhs = compose(l, p, compose(l, q, r));
  return Path{id_l(l, lhs.type, lhs.lhs, lhs.rhs), lhs.proof, rhs.proof, proof};
}

Path funext_app_beta_target(Layer l, Term f_type, Term f, Term a) {
  const Term& dom = f_type->kids[0];
  const Term& b = f_type->kids[1];
  Term ba = inst1(b, a);
  Term fa = app_l(l, f, a);
  Term k = id_l(l, ba, fa, fa);
  Term h0 = lam_l(l, dom, refl_l(l, app_l(l, weaken(f, 1), var(0))));
  Term e = id_l(l, f_type, f, f);
  Path fb{e, funext_l(l, f, f, h0), refl_l(l, f), funext_beta_l(l, f)};
  // q |-> happly f f q a
  Term fn = happly(l, weaken(f_type, 1), weaken(f, 1), weaken(f, 1), var(0), weaken(a, 1));
  Path s1 = ap(l, fb, fn, k);
  Term ba2 = weaken(ba, 2);
  Term motive = id_l(l, ba2, app_l(l, weaken(f, 2), weaken(a, 2)), app_l(l, var(1), weaken(a, 2)));
  Path s2 = jbeta_path(l, f_type, f, motive, refl_l(l, fa));
  return compose(l, s1, s2);
}

Term inner_of_outer_term(std::uint32_t level, Term a, Term x, Term y, Term p) {
  Term code = tm_code(level, a);
  Term motive = tm_code(level, id(weaken(a, 2), weaken(x, 2), var(1)));
  return j_o(code, x, motive, refl(x), y, p);
}

}  // namespace wtt
