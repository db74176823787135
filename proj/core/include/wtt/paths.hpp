#pragma once

#include "wtt/term.hpp"

namespace wtt {

// Term builders shared by the kernel and the derived library. Each builder
// works on either layer: inner (Id/refl/J) or outer (IdO/reflO/JO).
enum class Layer { Inner, Outer };

Term id_l(Layer l, Term a, Term x, Term y);
Term refl_l(Layer l, Term x);
Term j_l(Layer l, Term a, Term x, Term motive, Term d, Term y, Term p);
Term jbeta_l(Layer l, Term a, Term x, Term motive, Term d);
Term pi_l(Layer l, Term a, Term body);
Term lam_l(Layer l, Term a, Term body);
Term app_l(Layer l, Term f, Term a);
Term funext_l(Layer l, Term f, Term g, Term h);
Term funext_beta_l(Layer l, Term f);

// Instantiates a one-binder body at a term of the ambient context.
Term inst1(const Term& body, const Term& a);
// Instantiates a two-binder motive (Var 1 = y, Var 0 = q).
Term inst2(const Term& motive, const Term& y, const Term& q);
// Moves a one-binder family over the ambient context into a J motive over
// (y, q): the family's bound variable becomes y.
Term family_to_motive(const Term& family);

// transport P p d = J A x (y q. P y) d y p, with P a one-binder family over A.
Term transport(Layer l, Term a, Term x, Term y, Term family, Term p, Term d);

// happly {Pi A B} f g p a : Id (B a) (app f a) (app g a), with F = Pi A B.
Term happly(Layer l, Term f_type, Term f, Term g, Term p, Term a);

// An internal equality together with its boundary: proof : Id type lhs rhs.
struct Path {
  Term type;
  Term lhs;
  Term rhs;
  Term proof;
};

Path refl_path(Layer l, Term type, Term x);
// J-beta instance as a path from J A x P d x refl to d.
Path jbeta_path(Layer l, Term a, Term x, Term motive, Term d);
// p . q, by J on q based at q.lhs.
Path compose(Layer l, const Path& p, const Path& q);
// p^-1, by J on p.
Path inverse(Layer l, const Path& p);
// ap f p for a one-binder function f over p.type into the fixed type `cod`.
Path ap(Layer l, const Path& p, const Term& fn, const Term& cod);
// Composes a non-empty chain left to right.
Path chain(Layer l, const std::vector<Path>& steps);

// Groupoid laws. Each returns a path in Id (Id T a b) between the two sides;
// the base cases come from J-beta and the rest by J on the last path.
// compose p refl = p
Path right_unit(Layer l, const Path& p);
// compose refl p = p
Path left_unit(Layer l, const Path& p);
// inverse refl = refl
Path inverse_refl(Layer l, Term type, Term x);
// compose p (inverse p) = refl
Path right_inverse(Layer l, const Path& p);
// compose (inverse p) p = refl
Path left_inverse(Layer l, const Path& p);
// inverse (inverse p) = p
Path inverse_inverse(Layer l, const Path& p);
// compose (compose p q) r = compose p (compose q r)
Path associate(Layer l, const Path& p, const Path& q, const Path& r);

// Whiskering: compose a q = compose a' q along e : a = a', and symmetrically.
Path whisker_left(Layer l, const Path& e, const Path& q);
Path whisker_right(Layer l, const Path& p, const Path& e);
// inverse a = inverse a' along e : a = a'.
Path ap_inverse(Layer l, const Path& e);

// The fixed witness in the type of funext-app-beta: for F = Pi A B, f : F,
// a : A, a path from happly (funext f f (lam a. refl)) a to refl (app f a),
// assembled from funext-beta and the J-beta of happly.
Path funext_app_beta_target(Layer l, Term f_type, Term f, Term a);

// [p] for p : IdO (tm_n A) x y: transport of refl x along p.
Term inner_of_outer_term(std::uint32_t level, Term a, Term x, Term y, Term p);

}  // namespace wtt
