#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wtt/fragment.hpp"
#include "wtt/paths.hpp"

namespace wtt {

enum class CongruenceMode { MarkedOnly, UIP };

enum class Reason {
  MarkEndpoints,  // a[s] ~ b[s] for a mark instance
  MarkTerm,       // p[s] ~ refl b[s]
  Congruence,     // same former, congruent arguments
  Transport,      // a ~ transport e a, a fibrancy extension
  Internal,       // UIP mode: an enumerated q : Id A a b
  Outer,          // an enumerated outer equality (induced congruence)
};

const char* reason_name(Reason r);

struct Derivation {
  std::size_t a = 0;
  std::size_t b = 0;
  Reason reason = Reason::Congruence;
  std::string detail;
  Term witness;  // a path proof from a to b, when one is known
};

struct MarkInstance {
  std::string mark;
  std::vector<Term> args;
  std::size_t lhs = 0, rhs = 0, term = 0, refl = 0;
};

// A term added by fibrancy: result = transport of source from one type to a
// congruent one, along `witness`.
struct TransportExtension {
  std::size_t source = 0;
  std::size_t result = 0;
  std::size_t from_type = 0;
  std::size_t to_type = 0;
  Term witness;
};

// Operator of a fragment term for the closure: kind and payload, binder
// children (opaque), and the classes of its fragment arguments. A J motive
// of the form (y q. C) or (y q. P y q) contributes C or P as an argument.
struct Shape {
  Kind kind = Kind::Var;
  std::uint32_t n = 0;
  std::string name;
  int motive = 0;  // 0 none, 1 constant, 2 applied, 3 opaque
  std::vector<const Node*> opaque;
  std::vector<std::size_t> args;

  bool same_operator(const Shape& o) const {
    return kind == o.kind && n == o.n && name == o.name && motive == o.motive && opaque == o.opaque &&
           args.size() == o.args.size();
  }
};

Shape shape_of(const Fragment& f, const Term& key);

class Congruence {
 public:
  Fragment fragment;
  CongruenceMode mode = CongruenceMode::MarkedOnly;
  std::vector<MarkInstance> instances;
  std::vector<TransportExtension> transports;
  std::vector<Derivation> witnesses;  // derivation order
  // (term, target type) pairs whose transport the kernel rejected.
  std::vector<std::pair<std::size_t, std::size_t>> fibrancy_gaps;
  // (type, type) pairs of congruent types with no homogeneous witness path.
  std::vector<std::pair<std::size_t, std::size_t>> unwitnessed;
  std::vector<Shape> shapes;

  // Canonical member: the smallest index of the class.
  std::size_t find(std::size_t i) const;
  bool same(std::size_t a, std::size_t b) const { return find(a) == find(b); }
  // Classes ordered by their first member.
  std::vector<std::vector<std::size_t>> classes() const;
  // Test hook: rewrites the partition without recording a derivation.
  void force_partition(const std::vector<std::size_t>& canonical) { parent_ = canonical; }

  // Merges two classes; returns false when already merged.
  bool merge(std::size_t a, std::size_t b, Reason why, std::string detail = {}, Term witness = nullptr);
  void resize(std::size_t n);

 private:
  std::vector<std::size_t> parent_;
};

struct OuterSeed {
  Term lhs;
  Term rhs;
  Term proof;  // outer path lhs -> rhs
};

// Closure of the mark instances (and, in UIP mode, internal equalities) over
// a copy of the fragment. `seeds` adds outer equalities for the induced
// congruence; marks are then ignored unless `use_marks`.
Congruence generate(const Signature& sig, const Fragment& f, CongruenceMode mode, const Config& cfg = {},
                    const std::vector<OuterSeed>& seeds = {}, bool use_marks = true);

struct QuotientOp {
  Shape shape;  // args are class ids
  std::size_t result = 0;
};

struct QuotientFragment {
  std::vector<std::size_t> representative;  // class id -> term index
  std::vector<std::size_t> class_of;        // term index -> class id
  std::vector<QuotientOp> table;
  std::map<std::vector<std::uintptr_t>, std::size_t> index;  // encoded operator -> table entry

  // Class of every term, computed through the operation tables.
  std::vector<std::size_t> eval_all(const Congruence& c) const;
  std::optional<std::size_t> lookup(const Shape& s) const;
};

QuotientFragment quotient(const Congruence& c);

struct Report {
  bool ok = true;
  std::size_t checked = 0;
  std::string message;
  std::optional<std::pair<std::size_t, std::size_t>> witness;
};

// ker q = congruence on the fragment.
Report check_effectiveness(const Congruence& c, const QuotientFragment& q);
// Every class and every operation entry has a preimage in the fragment.
Report check_strong_lifting(const Congruence& c, const QuotientFragment& q);

}  // namespace wtt
