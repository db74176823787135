#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "wtt/term.hpp"

namespace wtt {

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(const std::string& msg, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Raw S-expression tree with source positions.
struct SExpr {
  bool is_atom = true;
  std::string atom;
  std::vector<SExpr> items;
  int line = 1;
  int column = 1;
};

// Parses every top-level S-expression in `text`. `--` starts a line comment.
std::vector<SExpr> read_sexprs(const std::string& text, int first_line = 1);

// `scope` lists bound names outermost first; the last entry is Var 0.
Term sexpr_to_term(const SExpr& e, std::vector<std::string> scope = {});
Term parse_term(const std::string& text, std::vector<std::string> scope = {});

// Canonical printing; parse_term(print_term(t, scope), scope) == t.
std::string print_term(const Term& t, std::vector<std::string> scope = {});

}  // namespace wtt
