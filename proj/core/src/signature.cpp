#include "wtt/signature.hpp"

#include <set>
#include <sstream>

#include "wtt/sexpr.hpp"
#include "wtt/typechecker.hpp"

namespace wtt {

const GenDecl* Signature::find_gen(const std::string& name) const {
  for (const auto& g : gens)
    if (g.name == name) return &g;
  return nullptr;
}

const MarkDecl* Signature::find_mark(const std::string& name) const {
  for (const auto& m : marks)
    if (m.name == name) return &m;
  return nullptr;
}

SignatureError::SignatureError(const std::string& msg, std::string decl, int line, int column)
    : std::runtime_error(line > 0 ? std::to_string(line) + ":" + std::to_string(column) + ": " + msg : msg),
      decl_(std::move(decl)),
      line_(line),
      column_(column) {}

namespace {

bool is_reserved(const std::string& s) {
  static const std::set<std::string> words = {
      "gen",    "mark",   "U",         "Lift",        "lift",       "lower",           "Id",   "refl",
      "J",      "J-beta", "Jβ",        "Pi",          "lam",        "app",             "funext",
      "funext-beta",      "funext-app", "funext-app-beta",          "tm",              "IdO",  "reflO",
      "JO",     "JO-beta", "PiO",      "lamO",        "appO",       "funextO",         "funextO-beta",
      "funextO-app",      "funextO-app-beta",         "hat",        "tilde",           ":",    "_"};
  return words.count(s) > 0;
}

// The tokens after ':' form one term; several tokens are read as a list.
SExpr rest_as_one(const std::vector<SExpr>& items, std::size_t from) {
  if (items.size() - from == 1) return items[from];
  SExpr e;
  e.is_atom = false;
  e.line = items[from].line;
  e.column = items[from].column;
  e.items.assign(items.begin() + static_cast<std::ptrdiff_t>(from), items.end());
  return e;
}

}  // namespace

Signature parse_signature(const std::string& text) {
  Signature sig;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::vector<SExpr> items = read_sexprs(raw, line);
    if (items.empty()) continue;
    const SExpr& kw = items[0];
    if (!kw.is_atom || (kw.atom != "gen" && kw.atom != "mark"))
      throw SyntaxError("expected 'gen' or 'mark'", kw.line, kw.column);
    bool is_gen = kw.atom == "gen";
    if (items.size() < 2) throw SyntaxError("expected a declaration name", kw.line, kw.column + 1);
    const SExpr& nm = items[1];
    if (!nm.is_atom || is_reserved(nm.atom))
      throw SyntaxError("expected a declaration name at '" + (nm.is_atom ? nm.atom : std::string("(")) + "'", nm.line,
                        nm.column);
    Telescope params;
    std::vector<std::string> scope;
    std::size_t i = 2;
    for (; i < items.size() && !items[i].is_atom; ++i) {
      const SExpr& b = items[i];
      if (b.items.size() < 2 || !b.items[0].is_atom || is_reserved(b.items[0].atom))
        throw SyntaxError("expected a parameter (name Type)", b.line, b.column);
      Term ty = sexpr_to_term(rest_as_one(b.items, 1), scope);
      params.push_back(TeleEntry{b.items[0].atom, ty, -1});
      scope.push_back(b.items[0].atom);
    }
    Term body;
    if (i < items.size()) {
      if (!items[i].is_atom || items[i].atom != ":")
        throw SyntaxError("expected ':'", items[i].line, items[i].column);
      if (i + 1 >= items.size()) throw SyntaxError("expected a term after ':'", items[i].line, items[i].column + 1);
      body = sexpr_to_term(rest_as_one(items, i + 1), scope);
    } else if (is_gen) {
      throw SyntaxError("generator needs ': Type'", nm.line, nm.column + static_cast<int>(nm.atom.size()));
    }
    if (is_gen) {
      sig.gens.push_back(GenDecl{nm.atom, params, body, -1, line});
    } else {
      MarkDecl m;
      m.name = nm.atom;
      m.params = params;
      m.line = line;
      m.explicit_term = body != nullptr;
      if (!body) {
        std::vector<Term> spine;
        for (std::size_t k = params.size(); k-- > 0;) spine.push_back(var(static_cast<std::uint32_t>(k)));
        body = gen(nm.atom, spine);
      }
      m.term = body;
      sig.marks.push_back(m);
    }
  }
  return sig;
}

namespace {

std::string print_params(const Telescope& params, std::vector<std::string>& scope) {
  std::string out;
  for (const auto& p : params) {
    out += " (" + p.name + " " + print_term(p.type, scope) + ")";
    scope.push_back(p.name);
  }
  return out;
}

}  // namespace

std::string print_signature(const Signature& sig) {
  std::string out;
  for (const auto& g : sig.gens) {
    std::vector<std::string> scope;
    out += "gen " + g.name + print_params(g.params, scope);
    out += " : " + print_term(g.type, scope) + "\n";
  }
  for (const auto& m : sig.marks) {
    std::vector<std::string> scope;
    out += "mark " + m.name + print_params(m.params, scope);
    if (m.explicit_term) out += " : " + print_term(m.term, scope);
    out += "\n";
  }
  return out;
}

Signature validate(const Signature& sig, const Config& cfg) {
  Signature out;
  std::set<std::string> seen;
  for (const auto& g0 : sig.gens) {
    GenDecl g = g0;
    if (is_reserved(g.name)) throw SignatureError("'" + g.name + "' is reserved", g.name, g.line);
    if (!seen.insert(g.name).second)
      throw SignatureError("duplicate generator '" + g.name + "'", g.name, g.line);
    Checker chk(out, Mode::weak(), cfg);
    Context ctx;
    try {
      for (auto& p : g.params) {
        p.level = static_cast<int>(chk.type_level(ctx, p.type));
        ctx.push(p.type, p.name);
      }
      g.level = static_cast<int>(chk.type_level(ctx, g.type));
    } catch (const TypeError& e) {
      throw SignatureError("gen " + g.name + ": " + e.what(), g.name, g.line);
    } catch (const ScopeError& e) {
      throw SignatureError("gen " + g.name + ": " + e.what(), g.name, g.line);
    }
    out.gens.push_back(g);
  }
  std::set<std::string> marks_seen;
  for (const auto& m0 : sig.marks) {
    MarkDecl m = m0;
    if (!marks_seen.insert(m.name).second)
      throw SignatureError("duplicate mark '" + m.name + "'", m.name, m.line);
    Checker chk(out, Mode::weak(), cfg);
    Context ctx;
    try {
      for (auto& p : m.params) {
        p.level = static_cast<int>(chk.type_level(ctx, p.type));
        ctx.push(p.type, p.name);
      }
      Term ty = chk.infer(ctx, m.term);
      Term w = chk.whnf(ctx, ty);
      if (w->kind != Kind::Id) throw SignatureError("mark " + m.name + ": mark must have Id type", m.name, m.line);
      m.id_type = w;
      m.carrier = w->kids[0];
      m.lhs = w->kids[1];
      m.rhs = w->kids[2];
      m.level = static_cast<int>(chk.type_level(ctx, m.carrier));
    } catch (const TypeError& e) {
      throw SignatureError("mark " + m.name + ": " + e.what(), m.name, m.line);
    } catch (const ScopeError& e) {
      throw SignatureError("mark " + m.name + ": " + e.what(), m.name, m.line);
    }
    out.marks.push_back(m);
  }
  out.validated = true;
  return out;
}

namespace {

MarkDecl jbeta_mark(std::string name, unsigned motive_level, unsigned carrier_level) {
  MarkDecl m;
  m.name = std::move(name);
  // A : U c
  m.params.push_back(TeleEntry{"A", univ(carrier_level), -1});
  // x : A
  m.params.push_back(TeleEntry{"x", var(0), -1});
  // P : Pi (y A) (Pi (q (Id A x y)) (U l))
  m.params.push_back(TeleEntry{"P", pi(var(1), pi(id(var(2), var(1), var(0)), univ(motive_level))), -1});
  // d : P x (refl x)
  m.params.push_back(TeleEntry{"d", app(app(var(0), var(1)), refl(var(1))), -1});
  Term motive = app(app(var(3), var(1)), var(0));
  m.term = jbeta(var(3), var(2), motive, var(0));
  m.explicit_term = true;
  return m;
}

}  // namespace

Signature jbeta_signature(unsigned motive_level) { return with_jbeta_mark(Signature{}, motive_level); }

Signature with_jbeta_mark(const Signature& sig, unsigned motive_level) {
  Signature out = sig;
  out.validated = false;
  if (!out.find_mark("jbeta")) out.marks.push_back(jbeta_mark("jbeta", motive_level, 0));
  return out;
}

Signature with_jbeta_marks(const Signature& sig, unsigned levels) {
  Signature out = sig;
  out.validated = false;
  for (unsigned c = 0; c < levels; ++c)
    for (unsigned m = 0; m < levels; ++m) {
      std::string name = "jbeta_" + std::to_string(c) + "_" + std::to_string(m);
      if (!out.find_mark(name)) out.marks.push_back(jbeta_mark(name, m, c));
    }
  return out;
}

}  // namespace wtt
