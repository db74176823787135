#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "wtt/config.hpp"
#include "wtt/signature.hpp"
#include "wtt/term.hpp"
#include "wtt/typechecker.hpp"

namespace wtt {

class FragmentBudget : public std::runtime_error {
 public:
  explicit FragmentBudget(std::size_t cap)
      : std::runtime_error("fragment exceeds the cap of " + std::to_string(cap) + " terms"), cap_(cap) {}
  std::size_t cap() const { return cap_; }

 private:
  std::size_t cap_;
};

struct FragmentTerm {
  Term term;  // first enumerated representative
  Term type;  // normal form of its type
  Term key;   // normal form of the term
  unsigned depth = 0;
  // Added by a closure step rather than by enumeration.
  bool extension = false;
};

// Enumerated terms over one context, deduplicated up to conversion in
// `mode`. Indices are stable and follow enumeration order.
struct Fragment {
  unsigned depth = 0;
  Mode mode;
  Context ctx;
  std::vector<FragmentTerm> terms;

  const FragmentTerm& operator[](std::size_t i) const { return terms[i]; }
  std::size_t size() const { return terms.size(); }
  // Index of the term with normal form `key`, or npos.
  std::size_t find(const Term& key) const;
  // Indices of the terms whose type has normal form `type`, in order.
  const std::vector<std::size_t>& of_type(const Term& type) const;
  // Distinct type normal forms in first-seen order.
  const std::vector<Term>& types() const { return type_order_; }
  // Appends a term with precomputed normal forms; returns its index.
  std::size_t insert(FragmentTerm ft);

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::unordered_map<const Node*, std::size_t> by_key_;
  std::unordered_map<const Node*, std::vector<std::size_t>> by_type_;
  std::vector<Term> type_order_;
};

struct EnumOptions {
  Mode mode;
  Config cfg;
};

// All terms of the restricted grammar up to `depth` over a validated
// signature. Depth 1: context variables, U 0 and constant generators.
// Each former adds one level over its deepest argument:
//   generator spines, refl, Id, app, and J / J-beta whose motive is either
//   a constant type or (y q. P y q) for a fragment term P.
Fragment enumerate(const Signature& sig, unsigned depth, const Context& ctx = {}, const EnumOptions& opt = {});

// Normalizes `t` and adds it, together with its non-binder subterms, when
// missing. Returns the index of its class.
std::size_t extend(Fragment& f, Checker& chk, const Term& t, std::size_t cap);

// Every instantiation of `params` by fragment terms, arguments outermost
// first, in lexicographic fragment order.
std::vector<std::vector<Term>> telescope_instances(Checker& chk, const Fragment& f, const Telescope& params);

// Normal forms of t and its type in the fragment's mode and context.
FragmentTerm classify(Checker& chk, Context& ctx, const Term& t);

}  // namespace wtt
