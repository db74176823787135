#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "wtt/paths.hpp"
#include "wtt/term.hpp"

namespace wtt {

class Checker;

// A point of a telescope: one term per entry, in the ambient context.
using Point = std::vector<Term>;

// Telescope plumbing. A telescope "over Γ + k" has its first entry scoped
// over k extra variables beyond the ambient context.
Point vars_point(std::size_t k, std::uint32_t offset = 0);
Point point_shift(const Point& p, std::uint32_t by, std::uint32_t cutoff = 0);
Telescope tele_shift(const Telescope& t, std::uint32_t by, std::uint32_t cutoff = 0);
// Closes the k leading variables of `t` with `args` (outermost first).
Telescope tele_inst(const Telescope& t, const Point& args);
Term term_inst(const Term& body, const Point& args);
Point point_inst(const Point& fn, const Point& args);
Point concat(const Point& a, const Point& b);
Telescope tele_slice(const Telescope& t, std::size_t from, std::size_t to);

// Kernel certification of a point against a telescope.
void check_point(Checker& chk, Context& ctx, const Point& p, const Telescope& t);
// Kernel certification of a telescope as a list of types.
void check_tele(Checker& chk, Context& ctx, const Telescope& t);

class IdStructure {
 public:
  explicit IdStructure(std::size_t length) : length_(length) {}
  virtual ~IdStructure() = default;
  std::size_t length() const { return length_; }
  // Id {a} x y, a telescope of the same length as `a`.
  virtual Telescope id(const Telescope& a, const Point& x, const Point& y) const = 0;
  virtual Point refl(const Telescope& a, const Point& x) const = 0;

 private:
  std::size_t length_;
};

using IdPtr = std::shared_ptr<const IdStructure>;

// J and J-beta between telescope families. A motive is a telescope over
// Γ + 2n: the n variables of y, then the n variables of p : Id x y.
class ElimStructure {
 public:
  ElimStructure(IdPtr source, IdPtr target) : source_(std::move(source)), target_(std::move(target)) {}
  virtual ~ElimStructure() = default;
  const IdStructure& source() const { return *source_; }
  const IdStructure& target() const { return *target_; }
  const IdPtr& source_ptr() const { return source_; }
  const IdPtr& target_ptr() const { return target_; }

  virtual Point j(const Telescope& a, const Point& x, const Telescope& motive, const Point& d, const Point& y,
                  const Point& p) const = 0;
  // A point of Id {motive[x, refl x]} (J a x motive d x (refl x)) d.
  virtual Point jbeta(const Telescope& a, const Point& x, const Telescope& motive, const Point& d) const = 0;

  // Expected types of the two operations, for certification.
  Telescope j_type(const Point& y, const Point& p, const Telescope& motive) const;
  Telescope jbeta_type(const Telescope& a, const Point& x, const Telescope& motive, const Point& d) const;

 private:
  IdPtr source_;
  IdPtr target_;
};

using ElimPtr = std::shared_ptr<const ElimStructure>;

// Base structures: the kernel's Id/refl/J/J-beta on single types.
IdPtr id_base();
ElimPtr elim_base();
// Structures on the empty telescope.
IdPtr id_empty();
ElimPtr elim_from_empty(IdPtr target);
ElimPtr elim_to_empty(IdPtr source);

// Id on C * D: (Id x_c y_c, p |-> Id (transport p x_d) y_d); refl's second
// component is the J-beta of that transport.
IdPtr id_join(IdPtr c, IdPtr d, ElimPtr c_to_d);

// J from C * D into a single-type family E. `c_to_d` is the eliminator
// used by the join's Id. The J-beta goes through the kernel's Π.
ElimPtr elim_join_left(ElimPtr c_to_d, ElimPtr c_to_e, ElimPtr d_to_e);

// J from C into D * E, with D the base family. `e_to_e` supplies the
// groupoid operations on E used by the J-beta.
ElimPtr elim_join_right(ElimPtr c_to_d, ElimPtr c_to_e, ElimPtr d_to_e, ElimPtr e_to_e);

// Length-n telescopes; n = 1 is the base structure.
IdPtr id_tele(std::size_t n);
ElimPtr elim_tele(std::size_t n, std::size_t m);

// Paths between telescope points: proof is a point of Id {type} lhs rhs.
struct TelePath {
  Telescope type;
  Point lhs;
  Point rhs;
  Point proof;
};

TelePath to_tele_path(const Path& p);
Path to_path(const TelePath& p);

// transport along p : Id a x y of d : family[x]; family is over Γ + |a|.
Point transport(const ElimStructure& e, const Telescope& a, const Point& x, const Point& y, const Telescope& family,
                const Point& p, const Point& d);
// The motive transport builds for a family.
Telescope transport_motive(const Telescope& family, std::size_t n);
TelePath jbeta_path(const ElimStructure& e, const Telescope& a, const Point& x, const Telescope& motive,
                    const Point& d);
// Groupoid operations through an eliminator from a family to itself.
TelePath compose(const ElimStructure& ee, const TelePath& p, const TelePath& q);
TelePath inverse(const ElimStructure& ee, const TelePath& p);
// ap fn p, with fn a point of `cod` over Γ + |p.type|; e eliminates from
// p's family into cod's family.
TelePath ap(const ElimStructure& e, const TelePath& p, const Point& fn, const Telescope& cod);

// transport q (transport (q^-1) d) = d, for q in the base family and any
// target family. `e` : base -> target, `ee` : target -> target.
TelePath transport_cancel(const ElimStructure& e, const ElimStructure& ee, const Term& a, const Term& x,
                          const Term& y, const Telescope& family, const Term& q, const Point& d);

// Groupoid witnesses, on the base family.
// transport (p^-1) (transport p d) = d
Path witness_transport_roundtrip(const Term& a, const Term& x, const Term& y, const Term& family, const Term& p,
                                 const Term& d);
// compose p (refl y) = p
Path witness_compose_refl(const Path& p);
// inverse (refl x) = refl x
Path witness_inverse_refl(const Term& a, const Term& x);
// happly (p . q) a = happly p a . happly q a, for p q over f_type = Pi A B.
Path witness_happly_compose(const Term& f_type, const Path& p, const Path& q, const Term& a);
// q = (q^-1)^-1 on the base family.
Path witness_inverse_inverse(const Path& q);

// Π-structures over lifted telescopes. `pi` returns one type per codomain
// component; `cod` is always a telescope over Γ + |dom|.
struct PiStructure {
  virtual ~PiStructure() = default;
  virtual std::size_t domain_length() const = 0;
  virtual std::size_t codomain_length() const = 0;
  virtual Telescope pi(const Telescope& dom, const Telescope& cod) const = 0;
  // b is a point of cod over Γ + |dom|.
  virtual Point lam(const Telescope& dom, const Telescope& cod, const Point& b) const = 0;
  virtual Point app(const Telescope& dom, const Telescope& cod, const Point& f, const Point& a) const = 0;
  // h is a point of pi(dom, a |-> Id (app f a) (app g a)); result in Id f g.
  virtual Point funext(const Telescope& dom, const Telescope& cod, const Point& f, const Point& g,
                       const Point& h) const = 0;
  // Whether funext-beta and funext-app are provided.
  virtual bool has_funext_beta() const { return false; }
  virtual Point funext_beta(const Telescope& dom, const Telescope& cod, const Point& f) const;
  virtual Point funext_app(const Telescope& dom, const Telescope& cod, const Point& f, const Point& g,
                           const Point& h, const Point& a) const;
};

// Π over the join of two single-type arities into single types.
class PiLiftRight : public PiStructure {
 public:
  std::size_t domain_length() const override { return 2; }
  std::size_t codomain_length() const override { return 1; }
  Telescope pi(const Telescope& dom, const Telescope& cod) const override;
  Point lam(const Telescope& dom, const Telescope& cod, const Point& b) const override;
  Point app(const Telescope& dom, const Telescope& cod, const Point& f, const Point& a) const override;
  Point funext(const Telescope& dom, const Telescope& cod, const Point& f, const Point& g,
               const Point& h) const override;
  bool has_funext_beta() const override { return true; }
  Point funext_beta(const Telescope& dom, const Telescope& cod, const Point& f) const override;
  Point funext_app(const Telescope& dom, const Telescope& cod, const Point& f, const Point& g, const Point& h,
                   const Point& a) const override;
  // happly for the lifted structure.
  Point happly(const Telescope& dom, const Telescope& cod, const Point& f, const Point& g, const Point& p,
               const Point& a) const;
};

// Π over a single-type arity into the join of two single-type families.
class PiLiftLeft : public PiStructure {
 public:
  std::size_t domain_length() const override { return 1; }
  std::size_t codomain_length() const override { return 2; }
  Telescope pi(const Telescope& dom, const Telescope& cod) const override;
  Point lam(const Telescope& dom, const Telescope& cod, const Point& b) const override;
  Point app(const Telescope& dom, const Telescope& cod, const Point& f, const Point& a) const override;
  Point funext(const Telescope& dom, const Telescope& cod, const Point& f, const Point& g,
               const Point& h) const override;
};

// Telescope of the homotopy argument of funext: pi(dom, a |-> Id (app f a) (app g a)).
Telescope homotopy_type(const PiStructure& s, const IdStructure& cod_id, const Telescope& dom, const Telescope& cod,
                        const Point& f, const Point& g);

// Parametrized eliminator. delta is a telescope over Γ + 2 (y, p); motive
// over Γ + 2 + |delta|; d over Γ + |delta[x, refl]|; args a point of
// delta[y, p]. Curries through the kernel's Π.
Term frobenius_j(const Term& a, const Term& x, const Telescope& delta, const Term& motive, const Term& d,
                 const Term& y, const Term& p, const Point& args);
// Path from frobenius_j a x delta motive d x (refl x) args to d[args].
Path frobenius_jbeta(const Term& a, const Term& x, const Telescope& delta, const Term& motive, const Term& d,
                     const Point& args);

}  // namespace wtt
