#include "wtt/sexpr.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

namespace wtt {

SyntaxError::SyntaxError(const std::string& msg, int line, int column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
      line_(line),
      column_(column) {}

namespace {

struct Reader {
  const std::string& s;
  std::size_t i = 0;
  int line;
  int col = 1;

  Reader(const std::string& text, int first_line) : s(text), line(first_line) {}

  void advance() {
    if (s[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++i;
  }

  void skip() {
    while (i < s.size()) {
      if (std::isspace(static_cast<unsigned char>(s[i]))) {
        advance();
      } else if (s[i] == '-' && i + 1 < s.size() && s[i + 1] == '-') {
        while (i < s.size() && s[i] != '\n') advance();
      } else {
        break;
      }
    }
  }

  SExpr read() {
    skip();
    if (i >= s.size()) throw SyntaxError("unexpected end of input", line, col);
    SExpr e;
    e.line = line;
    e.column = col;
    if (s[i] == ')') throw SyntaxError("unexpected ')'", line, col);
    if (s[i] == '(') {
      e.is_atom = false;
      advance();
      for (;;) {
        skip();
        if (i >= s.size()) throw SyntaxError("unclosed '('", e.line, e.column);
        if (s[i] == ')') {
          advance();
          break;
        }
        e.items.push_back(read());
      }
      return e;
    }
    std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i])) && s[i] != '(' && s[i] != ')') advance();
    e.atom = s.substr(start, i - start);
    return e;
  }
};

const std::map<std::string, Kind>& keywords() {
  static const std::map<std::string, Kind> table = {
      {"U", Kind::U},
      {"Lift", Kind::Lift},
      {"lift", Kind::LiftTm},
      {"lower", Kind::Lower},
      {"Id", Kind::Id},
      {"refl", Kind::Refl},
      {"J", Kind::J},
      {"J-beta", Kind::JBeta},
      {"Jβ", Kind::JBeta},
      {"Pi", Kind::Pi},
      {"lam", Kind::Lam},
      {"app", Kind::App},
      {"funext", Kind::Funext},
      {"funext-beta", Kind::FunextBeta},
      {"funext-app", Kind::FunextApp},
      {"funext-app-beta", Kind::FunextAppBeta},
      {"tm", Kind::TmCode},
      {"IdO", Kind::IdO},
      {"reflO", Kind::ReflO},
      {"JO", Kind::JO},
      {"JO-beta", Kind::JBetaO},
      {"PiO", Kind::PiO},
      {"lamO", Kind::LamO},
      {"appO", Kind::AppO},
      {"funextO", Kind::FunextO},
      {"funextO-beta", Kind::FunextBetaO},
      {"funextO-app", Kind::FunextAppO},
      {"funextO-app-beta", Kind::FunextAppBetaO},
      {"hat", Kind::Hat},
      {"tilde", Kind::Tilde},
  };
  return table;
}

[[noreturn]] void fail(const SExpr& e, const std::string& msg) { throw SyntaxError(msg, e.line, e.column); }

std::uint32_t parse_nat(const SExpr& e) {
  if (!e.is_atom || e.atom.empty() || !std::all_of(e.atom.begin(), e.atom.end(), [](char c) {
        return std::isdigit(static_cast<unsigned char>(c));
      }))
    fail(e, "expected a natural number");
  return static_cast<std::uint32_t>(std::stoul(e.atom));
}

const std::string& binder_name(const SExpr& e) {
  if (!e.is_atom) fail(e, "expected a binder name");
  if (keywords().count(e.atom)) fail(e, "keyword '" + e.atom + "' used as a binder name");
  return e.atom;
}

struct Builder {
  std::vector<std::string> scope;

  Term build(const SExpr& e) {
    if (e.is_atom) return atom(e);
    if (e.items.empty()) fail(e, "empty list");
    const SExpr& head = e.items[0];
    if (!head.is_atom) fail(head, "expected a constructor or generator name");
    auto kw = keywords().find(head.atom);
    if (kw == keywords().end()) {
      if (lookup(head.atom) >= 0) fail(head, "bound variable '" + head.atom + "' applied; use app");
      std::vector<Term> spine;
      for (std::size_t i = 1; i < e.items.size(); ++i) spine.push_back(build(e.items[i]));
      return gen(head.atom, std::move(spine));
    }
    Kind k = kw->second;
    std::size_t argc = e.items.size() - 1;
    auto need = [&](std::size_t n) {
      if (argc != n)
        fail(e, std::string("'") + head.atom + "' expects " + std::to_string(n) + " arguments, got " +
                    std::to_string(argc));
    };
    switch (k) {
      case Kind::U:
        need(1);
        return univ(parse_nat(e.items[1]));
      case Kind::TmCode:
        need(2);
        return tm_code(parse_nat(e.items[1]), build(e.items[2]));
      case Kind::Pi:
      case Kind::Lam:
      case Kind::PiO:
      case Kind::LamO: {
        need(2);
        const SExpr& b = e.items[1];
        if (b.is_atom || b.items.size() != 2) fail(b, "expected a binder (name Type)");
        const std::string& nm = binder_name(b.items[0]);
        Term dom = build(b.items[1]);
        scope.push_back(nm);
        Term body = build(e.items[2]);
        scope.pop_back();
        return make(k, {dom, body});
      }
      case Kind::J:
      case Kind::JBeta:
      case Kind::JO:
      case Kind::JBetaO: {
        bool full = k == Kind::J || k == Kind::JO;
        need(full ? 6 : 4);
        Term a = build(e.items[1]);
        Term x = build(e.items[2]);
        const SExpr& m = e.items[3];
        if (m.is_atom || m.items.size() != 2 || m.items[0].is_atom || m.items[0].items.size() != 2)
          fail(m, "expected a motive ((y p) P)");
        scope.push_back(binder_name(m.items[0].items[0]));
        scope.push_back(binder_name(m.items[0].items[1]));
        Term motive = build(m.items[1]);
        scope.pop_back();
        scope.pop_back();
        Term d = build(e.items[4]);
        if (!full) return make(k, {a, x, motive, d});
        return make(k, {a, x, motive, d, build(e.items[5]), build(e.items[6])});
      }
      case Kind::Hat:
      case Kind::Tilde: {
        if (argc < 1 || !e.items[1].is_atom) fail(e, "expected a mark name");
        std::vector<Term> spine;
        for (std::size_t i = 2; i < e.items.size(); ++i) spine.push_back(build(e.items[i]));
        return make(k, std::move(spine), 0, e.items[1].atom);
      }
      default: {
        int ar = arity_of(k);
        need(static_cast<std::size_t>(ar));
        std::vector<Term> kids;
        for (std::size_t i = 1; i < e.items.size(); ++i) kids.push_back(build(e.items[i]));
        return make(k, std::move(kids));
      }
    }
  }

  int lookup(const std::string& nm) const {
    for (std::size_t i = scope.size(); i-- > 0;)
      if (scope[i] == nm) return static_cast<int>(scope.size() - 1 - i);
    return -1;
  }

  Term atom(const SExpr& e) {
    if (keywords().count(e.atom)) fail(e, "keyword '" + e.atom + "' needs parentheses");
    if (e.atom == "_") fail(e, "'_' cannot be referenced");
    int ix = lookup(e.atom);
    if (ix >= 0) return var(static_cast<std::uint32_t>(ix));
    return gen(e.atom);
  }
};

void collect_names(const Term& t, std::set<std::string>& out) {
  if (!t->name.empty()) out.insert(t->name);
  for (const auto& k : t->kids) collect_names(k, out);
}

struct Printer {
  std::vector<std::string> scope;
  std::set<std::string> taken;
  std::string out;

  std::string fresh() {
    std::string base = "v" + std::to_string(scope.size());
    std::string nm = base;
    int n = 0;
    while (taken.count(nm) || keywords().count(nm) ||
           std::find(scope.begin(), scope.end(), nm) != scope.end())
      nm = base + "_" + std::to_string(++n);
    return nm;
  }

  void emit(const Term& t) {
    switch (t->kind) {
      case Kind::Var: {
        if (t->n >= scope.size()) throw ScopeError("print: free variable " + std::to_string(t->n) + " unnamed");
        out += scope[scope.size() - 1 - t->n];
        return;
      }
      case Kind::U:
        out += "(U " + std::to_string(t->n) + ")";
        return;
      case Kind::TmCode:
        out += "(tm " + std::to_string(t->n) + " ";
        emit(t->kids[0]);
        out += ")";
        return;
      case Kind::Gen:
        if (t->kids.empty()) {
          out += t->name;
          return;
        }
        out += "(" + t->name;
        for (const auto& k : t->kids) {
          out += " ";
          emit(k);
        }
        out += ")";
        return;
      case Kind::Hat:
      case Kind::Tilde:
        out += std::string("(") + kind_name(t->kind) + " " + t->name;
        for (const auto& k : t->kids) {
          out += " ";
          emit(k);
        }
        out += ")";
        return;
      case Kind::Pi:
      case Kind::Lam:
      case Kind::PiO:
      case Kind::LamO: {
        std::string nm = fresh();
        out += std::string("(") + kind_name(t->kind) + " (" + nm + " ";
        emit(t->kids[0]);
        out += ") ";
        scope.push_back(nm);
        emit(t->kids[1]);
        scope.pop_back();
        out += ")";
        return;
      }
      case Kind::J:
      case Kind::JBeta:
      case Kind::JO:
      case Kind::JBetaO: {
        out += std::string("(") + kind_name(t->kind) + " ";
        emit(t->kids[0]);
        out += " ";
        emit(t->kids[1]);
        std::string y = fresh();
        scope.push_back(y);
        std::string p = fresh();
        scope.push_back(p);
        out += " ((" + y + " " + p + ") ";
        emit(t->kids[2]);
        out += ")";
        scope.pop_back();
        scope.pop_back();
        for (std::size_t i = 3; i < t->kids.size(); ++i) {
          out += " ";
          emit(t->kids[i]);
        }
        out += ")";
        return;
      }
      default:
        out += std::string("(") + kind_name(t->kind);
        for (const auto& k : t->kids) {
          out += " ";
          emit(k);
        }
        out += ")";
        return;
    }
  }
};

}  // namespace

std::vector<SExpr> read_sexprs(const std::string& text, int first_line) {
  Reader r(text, first_line);
  std::vector<SExpr> out;
  for (;;) {
    r.skip();
    if (r.i >= text.size()) break;
    out.push_back(r.read());
  }
  return out;
}

Term sexpr_to_term(const SExpr& e, std::vector<std::string> scope) {
  Builder b{std::move(scope)};
  return b.build(e);
}

Term parse_term(const std::string& text, std::vector<std::string> scope) {
  auto all = read_sexprs(text);
  if (all.empty()) throw SyntaxError("no term", 1, 1);
  if (all.size() > 1) throw SyntaxError("trailing input after term", all[1].line, all[1].column);
  return sexpr_to_term(all[0], std::move(scope));
}

std::string print_term(const Term& t, std::vector<std::string> scope) {
  Printer p;
  collect_names(t, p.taken);
  // Context names that clash with generators or repeat would not read back.
  std::set<std::string> seen;
  for (std::size_t i = 0; i < scope.size(); ++i) {
    std::string& nm = scope[i];
    if (nm.empty() || nm == "_" || p.taken.count(nm) || keywords().count(nm) || seen.count(nm))
      nm = "c" + std::to_string(i);
    while (p.taken.count(nm) || seen.count(nm)) nm += "'";
    seen.insert(nm);
  }
  p.scope = std::move(scope);
  p.emit(t);
  return p.out;
}

}  // namespace wtt
