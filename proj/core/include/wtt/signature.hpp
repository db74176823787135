#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wtt/config.hpp"
#include "wtt/term.hpp"

namespace wtt {

struct GenDecl {
  std::string name;
  Telescope params;
  Term type;  // scoped over params
  int level = -1;
  int line = 0;
};

struct MarkDecl {
  std::string name;
  Telescope params;
  Term term;  // scoped over params
  bool explicit_term = true;
  int line = 0;
  // Filled in by validate: term : Id A a b over params.
  Term id_type;
  Term carrier;
  Term lhs;
  Term rhs;
  int level = -1;
};

struct Signature {
  std::vector<GenDecl> gens;
  std::vector<MarkDecl> marks;
  bool validated = false;

  const GenDecl* find_gen(const std::string& name) const;
  const MarkDecl* find_mark(const std::string& name) const;
};

class SignatureError : public std::runtime_error {
 public:
  SignatureError(const std::string& msg, std::string decl = {}, int line = 0, int column = 0);
  const std::string& declaration() const { return decl_; }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  std::string decl_;
  int line_;
  int column_;
};

// Grammar, one declaration per line:
//   gen  <name> [(<x> <Type>)...] : <Type>
//   mark <name> [(<x> <Type>)...] [: <Term>]
// A bare `mark p` marks the generator p applied to the mark's parameters.
// A multi-token type or term without outer parentheses is read as one list.
// `--` starts a comment.
Signature parse_signature(const std::string& text);
std::string print_signature(const Signature& sig);

// Certifies every declaration with the weak typechecker and records mark
// endpoints; throws SignatureError naming the offending declaration.
Signature validate(const Signature& sig, const Config& cfg = {});

// Standard fixtures used by tests and the CLI.
// [A : U0, x : A, P : Pi A (y. Pi (Id A x y) (_. U l)), d : P x (refl x)] with
// the mark J-beta(A, x, (y q. P y q), d) : Id (J ...) d.
Signature jbeta_signature(unsigned motive_level = 0);
// Adds the J-beta family mark to an existing (unvalidated) signature.
Signature with_jbeta_mark(const Signature& sig, unsigned motive_level = 0);
// Adds jbeta_c_m, the J-beta family with A : U c and motive in U m, for all
// c, m < levels.
Signature with_jbeta_marks(const Signature& sig, unsigned levels = 2);

}  // namespace wtt
