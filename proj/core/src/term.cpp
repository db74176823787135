#include "wtt/term.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <unordered_map>

namespace wtt {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::Var: return "Var";
    case Kind::U: return "U";
    case Kind::Lift: return "Lift";
    case Kind::LiftTm: return "lift";
    case Kind::Lower: return "lower";
    case Kind::Id: return "Id";
    case Kind::Refl: return "refl";
    case Kind::J: return "J";
    case Kind::JBeta: return "J-beta";
    case Kind::Pi: return "Pi";
    case Kind::Lam: return "lam";
    case Kind::App: return "app";
    case Kind::Funext: return "funext";
    case Kind::FunextBeta: return "funext-beta";
    case Kind::FunextApp: return "funext-app";
    case Kind::FunextAppBeta: return "funext-app-beta";
    case Kind::Gen: return "gen";
    case Kind::TmCode: return "tm";
    case Kind::IdO: return "IdO";
    case Kind::ReflO: return "reflO";
    case Kind::JO: return "JO";
    case Kind::JBetaO: return "JO-beta";
    case Kind::PiO: return "PiO";
    case Kind::LamO: return "lamO";
    case Kind::AppO: return "appO";
    case Kind::FunextO: return "funextO";
    case Kind::FunextBetaO: return "funextO-beta";
    case Kind::FunextAppO: return "funextO-app";
    case Kind::FunextAppBetaO: return "funextO-app-beta";
    case Kind::Hat: return "hat";
    case Kind::Tilde: return "tilde";
  }
  return "?";
}

bool is_outer_kind(Kind k) { return static_cast<int>(k) >= static_cast<int>(Kind::TmCode); }

int binders_of(Kind k, std::size_t i) {
  switch (k) {
    case Kind::J:
    case Kind::JBeta:
    case Kind::JO:
    case Kind::JBetaO:
      return i == 2 ? 2 : 0;
    case Kind::Pi:
    case Kind::Lam:
    case Kind::PiO:
    case Kind::LamO:
      return i == 1 ? 1 : 0;
    default:
      return 0;
  }
}

int arity_of(Kind k) {
  switch (k) {
    case Kind::Var:
    case Kind::U:
      return 0;
    case Kind::Lift:
    case Kind::LiftTm:
    case Kind::Lower:
    case Kind::Refl:
    case Kind::FunextBeta:
    case Kind::TmCode:
    case Kind::ReflO:
    case Kind::FunextBetaO:
      return 1;
    case Kind::Pi:
    case Kind::Lam:
    case Kind::App:
    case Kind::FunextAppBeta:
    case Kind::PiO:
    case Kind::LamO:
    case Kind::AppO:
    case Kind::FunextAppBetaO:
      return 2;
    case Kind::Id:
    case Kind::Funext:
    case Kind::IdO:
    case Kind::FunextO:
      return 3;
    case Kind::JBeta:
    case Kind::FunextApp:
    case Kind::JBetaO:
    case Kind::FunextAppO:
      return 4;
    case Kind::J:
    case Kind::JO:
      return 6;
    case Kind::Gen:
    case Kind::Hat:
    case Kind::Tilde:
      return -1;
  }
  return -1;
}

namespace {

// Hash-consing table: structurally equal nodes are shared, so equal terms are
// pointer-equal and substitution results stay compact.
struct InternTable {
  std::mutex mu;
  std::unordered_multimap<std::size_t, std::weak_ptr<const Node>> nodes;
};

InternTable& intern_table() {
  static InternTable* t = new InternTable;  // outlives static terms
  return *t;
}

bool shallow_equal(const Node& a, const Node& b) {
  if (a.kind != b.kind || a.n != b.n || a.name != b.name || a.kids.size() != b.kids.size()) return false;
  for (std::size_t i = 0; i < a.kids.size(); ++i)
    if (a.kids[i] != b.kids[i]) return false;
  return true;
}

void release_node(const Node* node) {
  InternTable& tab = intern_table();
  {
    std::lock_guard<std::mutex> lock(tab.mu);
    auto range = tab.nodes.equal_range(node->hash);
    for (auto it = range.first; it != range.second;) {
      if (it->second.expired()) it = tab.nodes.erase(it);
      else ++it;
    }
  }
  delete node;
}

}  // namespace

Term make(Kind k, std::vector<Term> kids, std::uint32_t n, std::string name) {
  auto* node = new Node;
  node->kind = k;
  node->n = n;
  node->name = std::move(name);
  node->kids = std::move(kids);
  std::size_t h = mix(static_cast<std::size_t>(k) * 131 + 7, n);
  if (!node->name.empty()) h = mix(h, std::hash<std::string>{}(node->name));
  std::uint32_t depth = 0;
  std::uint32_t fb = k == Kind::Var ? n + 1 : 0;
  for (std::size_t i = 0; i < node->kids.size(); ++i) {
    const Term& c = node->kids[i];
    h = mix(h, c->hash);
    depth = std::max(depth, c->depth);
    auto b = static_cast<std::uint32_t>(binders_of(k, i));
    if (c->free_bound > b) fb = std::max(fb, c->free_bound - b);
  }
  node->hash = h;
  node->depth = depth + 1;
  node->free_bound = fb;

  InternTable& tab = intern_table();
  std::lock_guard<std::mutex> lock(tab.mu);
  auto range = tab.nodes.equal_range(h);
  for (auto it = range.first; it != range.second; ++it) {
    if (Term existing = it->second.lock(); existing && shallow_equal(*existing, *node)) {
      delete node;
      return existing;
    }
  }
  Term out(node, release_node);
  tab.nodes.emplace(h, out);
  return out;
}

Term var(std::uint32_t i) {
  static const std::vector<Term> small = [] {
    std::vector<Term> v;
    for (std::uint32_t k = 0; k < 256; ++k) v.push_back(make(Kind::Var, {}, k));
    return v;
  }();
  if (i < small.size()) return small[i];
  return make(Kind::Var, {}, i);
}
Term univ(std::uint32_t level) { return make(Kind::U, {}, level); }
Term lift_ty(Term a) { return make(Kind::Lift, {std::move(a)}); }
Term lift(Term t) { return make(Kind::LiftTm, {std::move(t)}); }
Term lower(Term t) { return make(Kind::Lower, {std::move(t)}); }
Term id(Term a, Term x, Term y) { return make(Kind::Id, {std::move(a), std::move(x), std::move(y)}); }
Term refl(Term x) { return make(Kind::Refl, {std::move(x)}); }
Term j(Term a, Term x, Term motive, Term d, Term y, Term p) {
  return make(Kind::J, {std::move(a), std::move(x), std::move(motive), std::move(d), std::move(y), std::move(p)});
}
Term jbeta(Term a, Term x, Term motive, Term d) {
  return make(Kind::JBeta, {std::move(a), std::move(x), std::move(motive), std::move(d)});
}
Term pi(Term a, Term body) { return make(Kind::Pi, {std::move(a), std::move(body)}); }
Term lam(Term a, Term body) { return make(Kind::Lam, {std::move(a), std::move(body)}); }
Term app(Term f, Term a) { return make(Kind::App, {std::move(f), std::move(a)}); }
Term funext(Term f, Term g, Term h) { return make(Kind::Funext, {std::move(f), std::move(g), std::move(h)}); }
Term funext_beta(Term f) { return make(Kind::FunextBeta, {std::move(f)}); }
Term funext_app(Term f, Term g, Term h, Term a) {
  return make(Kind::FunextApp, {std::move(f), std::move(g), std::move(h), std::move(a)});
}
Term funext_app_beta(Term f, Term a) { return make(Kind::FunextAppBeta, {std::move(f), std::move(a)}); }
Term gen(std::string name, std::vector<Term> spine) { return make(Kind::Gen, std::move(spine), 0, std::move(name)); }
Term tm_code(std::uint32_t level, Term a) { return make(Kind::TmCode, {std::move(a)}, level); }
Term id_o(Term t, Term x, Term y) { return make(Kind::IdO, {std::move(t), std::move(x), std::move(y)}); }
Term refl_o(Term x) { return make(Kind::ReflO, {std::move(x)}); }
Term j_o(Term t, Term x, Term motive, Term d, Term y, Term p) {
  return make(Kind::JO, {std::move(t), std::move(x), std::move(motive), std::move(d), std::move(y), std::move(p)});
}
Term jbeta_o(Term t, Term x, Term motive, Term d) {
  return make(Kind::JBetaO, {std::move(t), std::move(x), std::move(motive), std::move(d)});
}
Term pi_o(Term a, Term body) { return make(Kind::PiO, {std::move(a), std::move(body)}); }
Term lam_o(Term a, Term body) { return make(Kind::LamO, {std::move(a), std::move(body)}); }
Term app_o(Term f, Term a) { return make(Kind::AppO, {std::move(f), std::move(a)}); }
Term funext_o(Term f, Term g, Term h) { return make(Kind::FunextO, {std::move(f), std::move(g), std::move(h)}); }
Term funext_beta_o(Term f) { return make(Kind::FunextBetaO, {std::move(f)}); }
Term funext_app_o(Term f, Term g, Term h, Term a) {
  return make(Kind::FunextAppO, {std::move(f), std::move(g), std::move(h), std::move(a)});
}
Term funext_app_beta_o(Term f, Term a) { return make(Kind::FunextAppBetaO, {std::move(f), std::move(a)}); }
Term hat(std::string mark, std::vector<Term> spine) { return make(Kind::Hat, std::move(spine), 0, std::move(mark)); }
Term tilde(std::string mark, std::vector<Term> spine) {
  return make(Kind::Tilde, std::move(spine), 0, std::move(mark));
}

Term ty_code(std::uint32_t level) { return tm_code(level + 1, univ(level)); }

namespace {

Term rebuild(const Term& t, std::vector<Term> kids) {
  bool same = true;
  for (std::size_t i = 0; i < kids.size(); ++i) {
    if (kids[i] != t->kids[i]) {
      same = false;
      break;
    }
  }
  if (same) return t;
  return make(t->kind, std::move(kids), t->n, t->name);
}

// Per-call memo keyed by (node, binder depth); terms are DAGs after hash-consing.
struct MemoKey {
  const Node* node;
  std::uint32_t depth;
  bool operator==(const MemoKey& o) const { return node == o.node && depth == o.depth; }
};
struct MemoKeyHash {
  std::size_t operator()(const MemoKey& k) const { return mix(k.node->hash, k.depth); }
};
using Memo = std::unordered_map<MemoKey, Term, MemoKeyHash>;

// Small subterms are rebuilt directly; the memo pays off on deep ones.
constexpr std::uint32_t kMemoDepth = 3;

Term weaken_rec(const Term& t, std::uint32_t by, std::uint32_t cutoff, Memo& memo) {
  if (t->free_bound <= cutoff) return t;
  if (t->kind == Kind::Var) return var(t->n + by);
  bool use_memo = t->depth >= kMemoDepth;
  if (use_memo) {
    auto it = memo.find(MemoKey{t.get(), cutoff});
    if (it != memo.end()) return it->second;
  }
  std::vector<Term> kids;
  kids.reserve(t->kids.size());
  for (std::size_t i = 0; i < t->kids.size(); ++i)
    kids.push_back(weaken_rec(t->kids[i], by, cutoff + static_cast<std::uint32_t>(binders_of(t->kind, i)), memo));
  Term out = rebuild(t, std::move(kids));
  if (use_memo) memo.emplace(MemoKey{t.get(), cutoff}, out);
  return out;
}

struct SubstEnv {
  const std::vector<Term>& args;
  std::uint32_t shift;
  Memo memo;
  // args weakened to each binder depth
  std::unordered_map<std::uint64_t, Term> lifted;
};

Term subst_rec(const Term& t, SubstEnv& env, std::uint32_t depth) {
  if (t->free_bound <= depth) return t;
  if (t->kind == Kind::Var) {
    std::uint32_t i = t->n;
    if (i < depth) return t;
    std::uint32_t k = i - depth;
    if (k < env.args.size()) {
      if (depth == 0) return env.args[k];
      std::uint64_t key = (static_cast<std::uint64_t>(k) << 32) | depth;
      auto it = env.lifted.find(key);
      if (it != env.lifted.end()) return it->second;
      Term w = weaken(env.args[k], depth, 0);
      env.lifted.emplace(key, w);
      return w;
    }
    return var(static_cast<std::uint32_t>(k - env.args.size()) + env.shift + depth);
  }
  bool use_memo = t->depth >= kMemoDepth;
  if (use_memo) {
    auto it = env.memo.find(MemoKey{t.get(), depth});
    if (it != env.memo.end()) return it->second;
  }
  std::vector<Term> kids;
  kids.reserve(t->kids.size());
  for (std::size_t i = 0; i < t->kids.size(); ++i)
    kids.push_back(subst_rec(t->kids[i], env, depth + static_cast<std::uint32_t>(binders_of(t->kind, i))));
  Term out = rebuild(t, std::move(kids));
  if (use_memo) env.memo.emplace(MemoKey{t.get(), depth}, out);
  return out;
}

bool strengthen_rec(const Term& t, std::uint32_t by, std::uint32_t cutoff, Term& out) {
  if (t->free_bound <= cutoff) {
    out = t;
    return true;
  }
  if (t->kind == Kind::Var) {
    if (t->n < cutoff) {
      out = t;
      return true;
    }
    if (t->n < cutoff + by) return false;
    out = var(t->n - by);
    return true;
  }
  std::vector<Term> kids(t->kids.size());
  for (std::size_t i = 0; i < t->kids.size(); ++i) {
    if (!strengthen_rec(t->kids[i], by, cutoff + static_cast<std::uint32_t>(binders_of(t->kind, i)), kids[i]))
      return false;
  }
  out = rebuild(t, std::move(kids));
  return true;
}

bool occurs_rec(const Term& t, std::uint32_t index) {
  if (t->free_bound <= index) return false;
  if (t->kind == Kind::Var) return t->n == index;
  for (std::size_t i = 0; i < t->kids.size(); ++i)
    if (occurs_rec(t->kids[i], index + static_cast<std::uint32_t>(binders_of(t->kind, i)))) return true;
  return false;
}

}  // namespace

Term weaken(const Term& t, std::uint32_t by, std::uint32_t cutoff) {
  if (by == 0 || t->free_bound <= cutoff) return t;
  Memo memo;
  return weaken_rec(t, by, cutoff, memo);
}

Term substitute(const Term& body, const std::vector<Term>& args, std::uint32_t shift) {
  if (args.empty() && shift == 0) return body;
  SubstEnv env{args, shift, {}, {}};
  return subst_rec(body, env, 0);
}

bool try_strengthen(const Term& t, std::uint32_t by, std::uint32_t cutoff, Term& out) {
  if (by == 0) {
    out = t;
    return true;
  }
  return strengthen_rec(t, by, cutoff, out);
}

Term with_kids(const Term& t, std::vector<Term> kids) { return rebuild(t, std::move(kids)); }

bool alpha_equal(const Term& a, const Term& b) {
  if (a == b) return true;
  if (a->hash != b->hash || a->kind != b->kind || a->n != b->n || a->kids.size() != b->kids.size() ||
      a->name != b->name)
    return false;
  for (std::size_t i = 0; i < a->kids.size(); ++i)
    if (!alpha_equal(a->kids[i], b->kids[i])) return false;
  return true;
}

bool occurs_free(const Term& t, std::uint32_t index) { return occurs_rec(t, index); }

std::size_t term_size(const Term& t) {
  std::size_t s = 1;
  for (const auto& k : t->kids) s += term_size(k);
  return s;
}

Telescope tele_join(const Telescope& left, const Telescope& right, std::uint32_t ambient) {
  Telescope out = left;
  std::uint32_t scope = ambient + static_cast<std::uint32_t>(left.size());
  for (const auto& e : right) {
    if (e.type->free_bound > scope)
      throw ScopeError("tele_join: entry '" + e.name + "' refers outside the joined scope");
    out.push_back(e);
    ++scope;
  }
  return out;
}

bool tele_equal(const Telescope& a, const Telescope& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!alpha_equal(a[i].type, b[i].type)) return false;
  return true;
}

namespace {

std::uint64_t extend_stamp(std::uint64_t parent, const Term& type) {
  struct Key {
    std::uint64_t parent;
    const Node* type;
    bool operator==(const Key& o) const { return parent == o.parent && type == o.type; }
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const { return mix(k.type->hash, k.parent); }
  };
  struct Table {
    std::mutex mu;
    std::unordered_map<Key, std::uint64_t, KeyHash> ids;
    std::vector<Term> keep;
  };
  static Table* tab = new Table;
  std::lock_guard<std::mutex> lock(tab->mu);
  auto [it, fresh] = tab->ids.try_emplace(Key{parent, type.get()}, tab->ids.size() + 1);
  if (fresh) tab->keep.push_back(type);
  return it->second;
}

}  // namespace

void Context::push_type(Term type, std::string name) {
  stamps_.push_back(extend_stamp(stamp(), type));
  types_.push_back(std::move(type));
  names_.push_back(std::move(name));
}

void Context::push(Term type, std::string name) {
  push_type(type, name);
  entries_.push_back(CtxEntry{CtxEntry::Kind::Inner, std::move(name), std::move(type), nullptr, {}});
}

void Context::push_singleton(Term type, Term center, std::string y, std::string q) {
  push_type(type, y);
  push_type(id_o(weaken(type, 1), weaken(center, 1), var(0)), q);
  entries_.push_back(CtxEntry{CtxEntry::Kind::OuterSingleton, std::move(y), std::move(type), std::move(center),
                              std::move(q)});
}

void Context::pop(std::size_t n) {
  for (std::size_t i = 0; i < n && !entries_.empty(); ++i) {
    std::size_t width = entries_.back().kind == CtxEntry::Kind::OuterSingleton ? 2 : 1;
    entries_.pop_back();
    for (std::size_t w = 0; w < width; ++w) {
      types_.pop_back();
      stamps_.pop_back();
      names_.pop_back();
    }
  }
}

Term Context::lookup(std::uint32_t i) const {
  if (i >= types_.size()) throw ScopeError("variable index " + std::to_string(i) + " out of scope");
  return weaken(types_[types_.size() - 1 - i], i + 1);
}

}  // namespace wtt
