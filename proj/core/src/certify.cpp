#include "wtt/certify.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "wtt/derived.hpp"
#include "wtt/sexpr.hpp"
#include "wtt/typechecker.hpp"

namespace wtt {

namespace {

using F = std::function<void()>;

Term up(const Term& t, std::uint32_t k) { return weaken(t, k); }

// B at binder depth k beyond the ambient context, applied to v.
Term fam(const Term& b, std::uint32_t k, const Term& v) { return substitute(weaken(b, k, 1), {v}); }

Telescope tl(const std::vector<Term>& ts) {
  Telescope t;
  for (const auto& x : ts) t.push_back({"", x, -1});
  return t;
}

std::vector<Term> a_pool() {
  // over [X, F, x0]
  return {var(2), app(var(1), var(0)), id(var(2), var(0), var(0)), pi(var(2), app(var(2), var(0))),
          lift_ty(var(2))};
}

std::vector<Term> b_pool(const Term& a) {
  // over [X, F, x0, v : A]
  Term a1 = up(a, 1), a2 = up(a, 2);
  return {var(3),
          app(var(2), var(1)),
          id(a1, var(0), var(0)),
          pi(var(3), id(a2, var(1), var(1))),
          id(id(a1, var(0), var(0)), refl(var(0)), refl(var(0))),
          pi(a1, id(a2, var(1), var(0))),
          id(var(3), var(1), var(1)),
          pi(var(3), app(var(3), var(0))),
          univ(0),
          pi(id(a1, var(0), var(0)), var(4))};
}

class Harness {
 public:
  Harness(const CertInput& in, const Config& cfg) : in_(in), chk_(sig_, Mode::weak(), cfg), ctx_(cert_ambient()) {}

  std::size_t judgements = 0;

  void check(Context& ctx, const Term& t, const Term& ty) {
    ++judgements;
    chk_.check(ctx, t, ty);
  }
  void point(Context& ctx, const Point& p, const Telescope& t) {
    ++judgements;
    check_point(chk_, ctx, p, t);
  }
  void tele(Context& ctx, const Telescope& t) {
    ++judgements;
    check_tele(chk_, ctx, t);
  }
  void path(Context& ctx, const Path& p) { check(ctx, p.proof, id(p.type, p.lhs, p.rhs)); }
  // The path's stated sides must be the expected ones.
  void path(Context& ctx, const Path& p, const Term& lhs, const Term& rhs) {
    if (!alpha_equal(p.lhs, lhs) || !alpha_equal(p.rhs, rhs))
      throw std::runtime_error("witness relates " + print_term(p.lhs) + " and " + print_term(p.rhs));
    path(ctx, p);
  }
  void conv(Context& ctx, const Term& a, const Term& b) {
    ++judgements;
    if (!chk_.convertible(ctx, a, b))
      throw std::runtime_error("not convertible: " + print_term(a) + " and " + print_term(b));
  }

  void transport_case() {
    const Term &A = in_.a, &B = in_.b;
    Context ctx = ctx_;
    ctx.push(A, "x");
    ctx.push(up(A, 1), "y");
    ctx.push(id(up(A, 2), var(1), var(0)), "p");
    ctx.push(fam(B, 3, var(2)), "d");
    Term A4 = up(A, 4), x = var(3), y = var(2), p = var(1), d = var(0);
    Term family = weaken(B, 4, 1);
    check(ctx, transport(Layer::Inner, A4, x, y, family, p, d), fam(B, 4, y));
    Point tp = wtt::transport(*elim_base(), tl({A4}), {x}, {y}, tl({family}), {p}, {d});
    point(ctx, tp, tl({fam(B, 4, y)}));
    Path jb = jbeta_path(Layer::Inner, A4, x, family_to_motive(family), d);
    path(ctx, jb, transport(Layer::Inner, A4, x, x, family, refl(x), d), d);
    path(ctx, witness_transport_roundtrip(A4, x, y, family, p, d));
  }

  // [x : A, u v w : B x, p : Id u v, q : Id v w]
  Context carrier_ctx(bool with_q) {
    const Term &A = in_.a, &B = in_.b;
    Context ctx = ctx_;
    ctx.push(A, "x");
    ctx.push(fam(B, 1, var(0)), "u");
    ctx.push(fam(B, 2, var(1)), "v");
    ctx.push(fam(B, 3, var(2)), "w");
    ctx.push(id(fam(B, 4, var(3)), var(2), var(1)), "p");
    if (with_q) ctx.push(id(fam(B, 5, var(4)), var(2), var(1)), "q");
    return ctx;
  }

  void compose_case() {
    Context ctx = carrier_ctx(true);
    Term C = fam(in_.b, 6, var(5)), u = var(4), v = var(3), w = var(2);
    Path p{C, u, v, var(1)}, q{C, v, w, var(0)};
    Path pq = compose(Layer::Inner, p, q);
    check(ctx, pq.proof, id(C, u, w));
    TelePath tq = compose(*elim_base(), to_tele_path(p), to_tele_path(q));
    point(ctx, tq.proof, tl({id(C, u, w)}));
    path(ctx, witness_compose_refl(p), compose(Layer::Inner, p, refl_path(Layer::Inner, C, v)).proof, p.proof);
    path(ctx, left_unit(Layer::Inner, p));
    path(ctx, associate(Layer::Inner, p, q, inverse(Layer::Inner, q)));
  }

  void inverse_case() {
    Context ctx = carrier_ctx(false);
    Term C = fam(in_.b, 5, var(4)), u = var(3), v = var(2);
    Path p{C, u, v, var(0)};
    check(ctx, inverse(Layer::Inner, p).proof, id(C, v, u));
    point(ctx, inverse(*elim_base(), to_tele_path(p)).proof, tl({id(C, v, u)}));
    path(ctx, witness_inverse_refl(C, u), inverse(Layer::Inner, refl_path(Layer::Inner, C, u)).proof, refl(u));
    path(ctx, witness_inverse_inverse(p));
    path(ctx, right_inverse(Layer::Inner, p));
    path(ctx, left_inverse(Layer::Inner, p));
  }

  Telescope tele_a(std::size_t n) const {
    std::vector<Term> ts = {in_.a, in_.b, id(up(in_.a, 2), var(1), var(1))};
    ts.resize(n);
    return tl(ts);
  }

  void id_structure(const IdPtr& it, std::size_t n) {
    Context ctx = ctx_;
    Telescope a = tele_a(n);
    const auto N = static_cast<std::uint32_t>(n);
    for (const auto& e : a) ctx.push(e.type);
    for (const auto& e : tele_shift(a, N)) ctx.push(e.type);
    Telescope a2 = tele_shift(a, 2 * N);
    Telescope idt = it->id(a2, vars_point(n, N), vars_point(n, 0));
    if (idt.size() != n) throw std::runtime_error("Id telescope has the wrong length");
    tele(ctx, idt);
    point(ctx, it->refl(a2, vars_point(n, N)), it->id(a2, vars_point(n, N), vars_point(n, N)));
  }

  void id_join_case() {
    id_structure(id_join(id_base(), id_base(), elim_base()), 2);
    // An empty right factor gives back the base structure.
    IdPtr degenerate = id_join(id_base(), id_empty(), elim_to_empty(id_base()));
    Context ctx = ctx_;
    ctx.push(in_.a);
    ctx.push(up(in_.a, 1));
    Telescope a = tl({up(in_.a, 2)});
    Telescope got = degenerate->id(a, {var(1)}, {var(0)});
    Telescope want = id_base()->id(a, {var(1)}, {var(0)});
    if (!tele_equal(got, want)) throw std::runtime_error("join with the empty telescope differs from the base Id");
    tele(ctx, got);
  }

  Telescope motive(std::size_t n, std::size_t m) const {
    const Term &A = in_.a, &B = in_.b;
    std::vector<Term> ts;
    if (n == 0) {
      ts = {A, B, up(A, 2)};
    } else {
      const auto N = static_cast<std::uint32_t>(n);
      ts = {id(id(up(A, 3 * N), var(3 * N - 1), var(2 * N - 1)), var(N - 1), var(N - 1)), up(A, 3 * N + 1),
            fam(B, 3 * N + 2, var(0))};
    }
    ts.resize(m);
    return tl(ts);
  }

  // J and (optionally) J-beta of elim_tele(n, m), with x, y, p, d in context.
  void elim_case(const ElimPtr& el, std::size_t n, std::size_t m, bool beta) {
    Context ctx = ctx_;
    const auto N = static_cast<std::uint32_t>(n), M = static_cast<std::uint32_t>(m);
    Telescope a = tele_a(n);
    IdPtr it = id_tele(n);
    for (const auto& e : a) ctx.push(e.type);
    for (const auto& e : tele_shift(a, N)) ctx.push(e.type);
    for (const auto& e : it->id(tele_shift(a, 2 * N), vars_point(n, N), vars_point(n, 0))) ctx.push(e.type);
    Telescope mot = motive(n, m);
    Point xc = vars_point(n, 2 * N);
    Telescope dm = tele_inst(tele_shift(mot, 2 * N, 2 * N), concat(xc, it->refl(tele_shift(a, 3 * N), xc)));
    for (const auto& e : dm) ctx.push(e.type);
    Telescope aC = tele_shift(a, 3 * N + M);
    Point xC = vars_point(n, 2 * N + M), yC = vars_point(n, N + M), pC = vars_point(n, M), dC = vars_point(m, 0);
    Telescope motC = tele_shift(mot, 2 * N + M, 2 * N);
    point(ctx, el->j(aC, xC, motC, dC, yC, pC), el->j_type(yC, pC, motC));
    if (!beta) return;
    Telescope jbt = el->jbeta_type(aC, xC, motC, dC);
    tele(ctx, jbt);
    point(ctx, el->jbeta(aC, xC, motC, dC), jbt);
  }

  void pi_lift_right_case() {
    const Term &A = in_.a, &B = in_.b;
    Context ctx = ctx_;
    ctx.push(pi(A, pi(B, univ(0))), "G");
    Telescope dom = tl({up(A, 1), weaken(B, 1, 1)});
    Telescope cod = tl({app(app(var(2), var(1)), var(0))});
    PiLiftRight s;
    Telescope P = s.pi(dom, cod);
    tele(ctx, P);
    ctx.push(P[0].type, "f");
    ctx.push(weaken(P[0].type, 1), "g");
    Telescope d2 = tele_shift(dom, 2), c2 = tele_shift(cod, 2, 2);
    Telescope H = homotopy_type(s, *id_base(), d2, c2, {var(1)}, {var(0)});
    tele(ctx, H);
    ctx.push(H[0].type, "h");
    Telescope d3 = tele_shift(dom, 3), c3 = tele_shift(cod, 3, 2);
    Point f3 = {var(2)}, g3 = {var(1)}, h3 = {var(0)};
    Telescope P3 = s.pi(d3, c3);
    point(ctx, s.funext(d3, c3, f3, g3, h3), id_base()->id(P3, f3, g3));
    {
      Telescope w = tele_shift(d3, 2);
      Point fa = s.app(w, tele_shift(c3, 2, 2), point_shift(f3, 2), vars_point(2));
      Point fe = s.funext(d3, c3, f3, f3, s.lam(d3, c3, {refl(fa[0])}));
      point(ctx, s.funext_beta(d3, c3, f3), tl({id(id(P3[0].type, f3[0], f3[0]), fe[0], refl(f3[0]))}));
    }
    ctx.push(d3[0].type, "a1");
    ctx.push(d3[1].type, "a2");
    Telescope d5 = tele_shift(dom, 5), c5 = tele_shift(cod, 5, 2);
    Point f5 = {var(4)}, g5 = {var(3)}, h5 = {var(2)}, a = {var(1), var(0)};
    Term Fa = term_inst(c5[0].type, a);
    Term fa = s.app(d5, c5, f5, a)[0], ga = s.app(d5, c5, g5, a)[0];
    Point fe = s.funext(d5, c5, f5, g5, h5);
    Term hp = s.happly(d5, c5, f5, g5, fe, a)[0];
    check(ctx, hp, id(Fa, fa, ga));
    point(ctx, s.funext_app(d5, c5, f5, g5, h5, a), tl({id(id(Fa, fa, ga), hp, app(app(h5[0], a[0]), a[1]))}));
    // app (lam b) a reduces to b a.
    Point b = s.app(tele_shift(d5, 2), tele_shift(c5, 2, 2), point_shift(f5, 2), vars_point(2));
    conv(ctx, s.app(d5, c5, s.lam(d5, c5, b), a)[0], term_inst(b[0], a));
  }

  void pi_lift_left_case() {
    const Term &A = in_.a, &B = in_.b;
    Context ctx = ctx_;
    ctx.push(pi(A, pi(B, univ(0))), "G");
    Telescope dom = tl({up(A, 1)});
    Telescope cod = tl({weaken(B, 1, 1), app(app(var(2), var(1)), var(0))});
    PiLiftLeft s;
    Telescope P = s.pi(dom, cod);
    tele(ctx, P);
    for (const auto& e : P) ctx.push(e.type);
    for (const auto& e : tele_shift(P, 2)) ctx.push(e.type);
    Telescope d4 = tele_shift(dom, 4), c4 = tele_shift(cod, 4, 1);
    Point f = {var(3), var(2)}, g = {var(1), var(0)};
    IdPtr id2 = id_tele(2);
    Telescope H = homotopy_type(s, *id2, d4, c4, f, g);
    tele(ctx, H);
    for (const auto& e : H) ctx.push(e.type);
    const auto k = static_cast<std::uint32_t>(H.size());
    Telescope d6 = tele_shift(dom, 4 + k), c6 = tele_shift(cod, 4 + k, 1);
    Point f6 = point_shift(f, k), g6 = point_shift(g, k);
    point(ctx, s.funext(d6, c6, f6, g6, vars_point(k)), id2->id(s.pi(d6, c6), f6, g6));
    // app (lam b) a reduces to b a, componentwise.
    ctx.push(d6[0].type, "a");
    Telescope d7 = tele_shift(dom, 5 + k), c7 = tele_shift(cod, 5 + k, 1);
    Point f7 = point_shift(f, k + 1);
    Point b = s.app(tele_shift(d7, 1), tele_shift(c7, 1, 1), point_shift(f7, 1), vars_point(1));
    Point lhs = s.app(d7, c7, s.lam(d7, c7, b), {var(0)});
    Point rhs = point_inst(b, {var(0)});
    for (std::size_t i = 0; i < lhs.size(); ++i) conv(ctx, lhs[i], rhs[i]);
  }

  void frobenius_case() {
    const Term &A = in_.a, &B = in_.b;
    Context ctx = ctx_;
    ctx.push(A, "x");
    ctx.push(up(A, 1), "y");
    ctx.push(id(up(A, 2), var(1), var(0)), "p");
    ctx.push(fam(B, 3, var(1)), "b");
    Term A4 = up(A, 4), x = var(3), y = var(2), p = var(1), b = var(0);
    // delta over (y', p'): [r : Id A x y', c : B y']
    Telescope delta = tl({id(up(A, 6), var(5), var(1)), fam(B, 7, var(2))});
    Term motive = id(fam(B, 8, var(3)), var(0), var(0));
    Term d = refl(var(0));
    check(ctx, frobenius_j(A4, x, delta, motive, d, y, p, {p, b}), term_inst(motive, {y, p, p, b}));
    // Empty parameter telescope: the plain eliminator.
    Term m0 = id(up(A, 6), var(5), var(1));
    Term fj0 = frobenius_j(A4, x, {}, m0, refl(x), y, p, {});
    if (!alpha_equal(fj0, j(A4, x, m0, refl(x), y, p)))
      throw std::runtime_error("empty parameters do not give the plain eliminator");
    check(ctx, fj0, id(A4, x, y));
    ctx.push(id(A4, x, x), "r");
    ctx.push(fam(B, 5, var(4)), "c");
    Term A6 = up(A, 6), x6 = var(5);
    Telescope delta6 = tele_shift(delta, 2, 2);
    Term motive6 = weaken(motive, 2, 4), d6 = weaken(d, 2, 2);
    Point args = {var(1), var(0)};
    Path jb = frobenius_jbeta(A6, x6, delta6, motive6, d6, args);
    path(ctx, jb, frobenius_j(A6, x6, delta6, motive6, d6, x6, refl(x6), args), term_inst(d6, args));
  }

  void happly_case() {
    const Term &A = in_.a, &B = in_.b;
    Context ctx = ctx_;
    Term Fty = pi(A, B);
    ctx.push(Fty, "f");
    ctx.push(up(Fty, 1), "g");
    ctx.push(up(Fty, 2), "h");
    ctx.push(id(up(Fty, 3), var(2), var(1)), "p");
    ctx.push(id(up(Fty, 4), var(2), var(1)), "q");
    ctx.push(up(A, 5), "a");
    Term F6 = up(Fty, 6), f = var(5), g = var(4), h = var(3), a = var(0);
    check(ctx, happly(Layer::Inner, F6, f, g, var(2), a), id(fam(B, 6, a), app(f, a), app(g, a)));
    Path p{F6, f, g, var(2)}, q{F6, g, h, var(1)};
    path(ctx, witness_happly_compose(F6, p, q, a));
  }

 private:
  CertInput in_;
  Signature sig_;
  Checker chk_;
  Context ctx_;
};

}  // namespace

std::string CertInput::describe() const {
  std::vector<std::string> names = {"X", "F", "x0"};
  std::string out = "A = " + print_term(a, names);
  names.push_back("v");
  return out + ", B v = " + print_term(b, names);
}

Context cert_ambient() {
  Context ctx;
  ctx.push(univ(0), "X");
  ctx.push(pi(var(0), univ(0)), "F");
  ctx.push(var(1), "x0");
  return ctx;
}

std::size_t cert_input_count() { return a_pool().size() * b_pool(var(0)).size(); }

CertInput cert_input(std::size_t index) {
  auto as = a_pool();
  if (index >= cert_input_count()) throw std::invalid_argument("input index out of range");
  CertInput in;
  in.index = index;
  in.a = as[index % as.size()];
  in.b = b_pool(in.a)[index / as.size()];
  return in;
}

const std::vector<std::string>& combinator_names() {
  static const std::vector<std::string> names = {"transport", "compose",       "inverse",      "id_join",
                                                 "elim_join", "id_tele",       "elim_tele",    "pi_lift_right",
                                                 "pi_lift_left", "frobenius_j", "happly"};
  return names;
}

std::vector<std::pair<std::size_t, std::size_t>> elim_tele_beta_pairs(std::size_t input) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  // J-beta above n + m = 4 costs from a tenth of a second to ten seconds,
  // so even inputs take turns on the three larger pairs and (3, 3) runs on
  // input 0.
  const std::pair<std::size_t, std::size_t> heavy[] = {{1, 3}, {3, 2}, {2, 3}};
  for (std::size_t n = 0; n <= 3; ++n)
    for (std::size_t m = 0; m <= 3; ++m)
      if (n + m <= 4) out.emplace_back(n, m);
  if (input % 2 == 0) out.push_back(heavy[(input / 2) % 3]);
  if (input == 0) out.emplace_back(3, 3);
  return out;
}

CertOutcome certify_combinator(const std::string& name, std::size_t input, const std::vector<std::size_t>& sizes,
                               const Config& cfg) {
  CertInput in = cert_input(input);
  Harness h(in, cfg);
  std::map<std::string, F> cases = {
      {"transport", [&] { h.transport_case(); }},
      {"compose", [&] { h.compose_case(); }},
      {"inverse", [&] { h.inverse_case(); }},
      {"id_join", [&] { h.id_join_case(); }},
      {"elim_join",
       [&] {
         h.elim_case(elim_join_left(elim_tele(1, 1), elim_tele(1, 1), elim_tele(1, 1)), 2, 1, true);
         h.elim_case(elim_join_right(elim_tele(1, 1), elim_tele(1, 1), elim_tele(1, 1), elim_tele(1, 1)), 1, 2, true);
       }},
      {"id_tele",
       [&] {
         if (sizes.size() > 1 || (sizes.size() == 1 && (sizes[0] == 0 || sizes[0] > 3)))
           throw std::invalid_argument("id_tele takes one length 1 <= n <= 3");
         for (std::size_t n = 1; n <= 3; ++n)
           if (sizes.empty() || sizes[0] == n) h.id_structure(id_tele(n), n);
       }},
      {"elim_tele",
       [&] {
         if (!sizes.empty()) {
           if (sizes.size() != 2 || sizes[0] > 3 || sizes[1] > 3)
             throw std::invalid_argument("elim_tele takes lengths n m <= 3");
           h.elim_case(elim_tele(sizes[0], sizes[1]), sizes[0], sizes[1], true);
           return;
         }
         auto beta = elim_tele_beta_pairs(input);
         for (std::size_t n = 0; n <= 3; ++n)
           for (std::size_t m = 0; m <= 3; ++m) {
             bool b = std::find(beta.begin(), beta.end(), std::make_pair(n, m)) != beta.end();
             h.elim_case(elim_tele(n, m), n, m, b);
           }
       }},
      {"pi_lift_right", [&] { h.pi_lift_right_case(); }},
      {"pi_lift_left", [&] { h.pi_lift_left_case(); }},
      {"frobenius_j", [&] { h.frobenius_case(); }},
      {"happly", [&] { h.happly_case(); }},
  };
  auto it = cases.find(name);
  if (it == cases.end()) throw std::invalid_argument("unknown combinator '" + name + "'");
  if (!sizes.empty() && name != "id_tele" && name != "elim_tele")
    throw std::invalid_argument(name + " takes no size arguments");
  CertOutcome out;
  out.combinator = name;
  out.input = input;
  out.carrier = in.describe();
  try {
    it->second();
    out.ok = true;
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  out.judgements = h.judgements;
  return out;
}

}  // namespace wtt
