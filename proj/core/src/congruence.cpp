#include "wtt/congruence.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>

namespace wtt {

const char* reason_name(Reason r) {
  switch (r) {
    case Reason::MarkEndpoints:
      return "mark";
    case Reason::MarkTerm:
      return "mark-term";
    case Reason::Congruence:
      return "congruence";
    case Reason::Transport:
      return "transport";
    case Reason::Internal:
      return "internal-equality";
    case Reason::Outer:
      return "outer-equality";
  }
  return "?";
}

Shape shape_of(const Fragment& f, const Term& key) {
  Shape s;
  s.kind = key->kind;
  s.n = key->n;
  s.name = key->name;
  for (std::size_t i = 0; i < key->kids.size(); ++i) {
    const Term& kid = key->kids[i];
    bool motive = i == 2 && (key->kind == Kind::J || key->kind == Kind::JBeta || key->kind == Kind::JO ||
                             key->kind == Kind::JBetaO);
    if (motive) {
      Term c;
      std::size_t idx = Fragment::npos;
      if (try_strengthen(kid, 2, 0, c) && (idx = f.find(c)) != Fragment::npos) {
        s.motive = 1;
      } else if (kid->kind == Kind::App && kid->kids[0]->kind == Kind::App && kid->kids[1] == var(0) &&
                 kid->kids[0]->kids[1] == var(1) && try_strengthen(kid->kids[0]->kids[0], 2, 0, c) &&
                 (idx = f.find(c)) != Fragment::npos) {
        s.motive = 2;
      }
      if (idx != Fragment::npos) {
        s.opaque.push_back(nullptr);
        s.args.push_back(idx);
      } else {
        s.motive = 3;
        s.opaque.push_back(kid.get());
      }
      continue;
    }
    std::size_t idx = binders_of(key->kind, i) == 0 ? f.find(kid) : Fragment::npos;
    if (idx == Fragment::npos) {
      s.opaque.push_back(kid.get());
    } else {
      s.opaque.push_back(nullptr);
      s.args.push_back(idx);
    }
  }
  return s;
}

std::size_t Congruence::find(std::size_t i) const {
  while (parent_[i] != i) i = parent_[i];
  return i;
}

void Congruence::resize(std::size_t n) {
  for (std::size_t i = parent_.size(); i < n; ++i) parent_.push_back(i);
}

bool Congruence::merge(std::size_t a, std::size_t b, Reason why, std::string detail, Term witness) {
  std::size_t ra = find(a), rb = find(b);
  if (ra == rb) return false;
  if (rb < ra) std::swap(ra, rb);
  parent_[rb] = ra;
  witnesses.push_back(Derivation{a, b, why, std::move(detail), std::move(witness)});
  return true;
}

std::vector<std::vector<std::size_t>> Congruence::classes() const {
  std::map<std::size_t, std::vector<std::size_t>> by_root;
  for (std::size_t i = 0; i < parent_.size(); ++i) by_root[find(i)].push_back(i);
  std::vector<std::vector<std::size_t>> out;
  for (auto& [root, members] : by_root) out.push_back(std::move(members));
  return out;
}

namespace {

using Key = std::vector<std::uintptr_t>;

Key encode(const Shape& s, const std::vector<std::size_t>& args) {
  Key k{static_cast<std::uintptr_t>(s.kind), s.n, std::hash<std::string>{}(s.name),
        static_cast<std::uintptr_t>(s.motive)};
  for (const Node* p : s.opaque) k.push_back(reinterpret_cast<std::uintptr_t>(p));
  k.push_back(~std::uintptr_t{0});
  for (std::size_t a : args) k.push_back(a);
  return k;
}

std::vector<Term> reversed(const std::vector<Term>& v) { return {v.rbegin(), v.rend()}; }

class Engine {
 public:
  Engine(const Signature& sig, Congruence& c, const Config& cfg, bool outer)
      : c_(c),
        f_(c.fragment),
        chk_(sig, outer ? Mode::two_level() : f_.mode, cfg),
        ctx_(f_.ctx),
        cap_(cfg.fragment_cap),
        layer_(outer ? Layer::Outer : Layer::Inner) {}

  void sync() {
    c_.resize(f_.size());
    while (c_.shapes.size() < f_.size()) c_.shapes.push_back(shape_of(f_, f_[c_.shapes.size()].key));
  }

  std::size_t add(const Term& t) {
    std::size_t i = extend(f_, chk_, t, cap_);
    sync();
    return i;
  }

  void add_types() {
    std::size_t n = f_.size();
    for (std::size_t i = 0; i < n; ++i) {
      Term ty = f_[i].type;
      if (ty->kind != Kind::U) add(ty);
    }
  }

  void mark_instances(const Signature& sig) {
    for (const auto& m : sig.marks) {
      if (!m.lhs) continue;
      for (const auto& args : telescope_instances(chk_, f_, m.params)) {
        auto rev = reversed(args);
        Term lhs = substitute(m.lhs, rev), rhs = substitute(m.rhs, rev), term = substitute(m.term, rev);
        MarkInstance mi{m.name, args, 0, 0, 0, 0};
        try {
          mi.lhs = add(lhs);
          mi.rhs = add(rhs);
          mi.term = add(term);
          mi.refl = add(refl(rhs));
        } catch (const TypeError&) {
          continue;
        }
        c_.merge(mi.lhs, mi.rhs, Reason::MarkEndpoints, m.name, term);
        c_.merge(mi.term, mi.refl, Reason::MarkTerm, m.name);
        c_.instances.push_back(std::move(mi));
      }
    }
  }

  void seed(const std::vector<OuterSeed>& seeds) {
    for (const auto& s : seeds) {
      std::size_t a = add(s.lhs), b = add(s.rhs);
      c_.merge(a, b, Reason::Outer, "outer", s.proof);
    }
  }

  bool internal_equalities() {
    bool changed = false;
    for (std::size_t i = 0; i < f_.size(); ++i) {
      const Term& ty = f_[i].type;
      if (ty->kind != Kind::Id) continue;
      std::size_t a = f_.find(ty->kids[1]), b = f_.find(ty->kids[2]);
      if (a == Fragment::npos || b == Fragment::npos) continue;
      changed |= c_.merge(a, b, Reason::Internal, "", f_[i].key);
    }
    return changed;
  }

  bool close() {
    bool any = false;
    for (;;) {
      bool changed = false;
      std::map<Key, std::size_t> table;
      for (std::size_t i = 0; i < f_.size(); ++i) {
        const Shape& s = c_.shapes[i];
        if (s.args.empty()) continue;
        std::vector<std::size_t> args;
        for (std::size_t a : s.args) args.push_back(c_.find(a));
        auto [it, fresh] = table.emplace(encode(s, args), i);
        if (!fresh) changed |= c_.merge(it->second, i, Reason::Congruence);
      }
      if (!changed) return any;
      any = true;
    }
  }

  bool fibrancy() {
    std::map<std::size_t, std::vector<std::size_t>> type_classes;
    for (std::size_t i = 0; i < f_.size(); ++i)
      if (f_[i].type->kind == Kind::U) type_classes[c_.find(i)].push_back(i);
    bool changed = false;
    for (const auto& [root, types] : type_classes) {
      if (types.size() < 2) continue;
      for (std::size_t a_ty : types) {
        for (std::size_t b_ty : types) {
          if (a_ty == b_ty) continue;
          if (!witness(a_ty, b_ty)) {
            if (unwitnessed_.insert({a_ty, b_ty}).second) c_.unwitnessed.emplace_back(a_ty, b_ty);
            continue;
          }
          std::vector<std::size_t> sources = f_.of_type(f_[a_ty].key);
          for (std::size_t a : sources) {
            const auto& targets = f_.of_type(f_[b_ty].key);
            bool covered = std::any_of(targets.begin(), targets.end(), [&](std::size_t b) { return c_.same(a, b); });
            if (covered || !attempted_.insert({a, b_ty}).second) continue;
            changed |= transport(a, a_ty, b_ty);
          }
        }
      }
    }
    return changed;
  }

 private:
  bool transport(std::size_t a, std::size_t a_ty, std::size_t b_ty) {
    auto w = witness(a_ty, b_ty);
    Term u = f_[a_ty].type;
    Term t;
    if (layer_ == Layer::Inner) {
      t = wtt::transport(Layer::Inner, u, f_[a_ty].key, f_[b_ty].key, var(0), w->proof, f_[a].key);
    } else {
      Term code = tm_code(u->n + 1, u);
      t = wtt::transport(Layer::Outer, code, f_[a_ty].key, f_[b_ty].key, tm_code(u->n, var(0)), w->proof, f_[a].key);
    }
    FragmentTerm ft;
    try {
      chk_.check(ctx_, t, f_[b_ty].key);
      ft.term = t;
      ft.key = chk_.normalize(ctx_, t);
    } catch (const TypeError&) {
      c_.fibrancy_gaps.emplace_back(a, b_ty);
      return false;
    }
    std::size_t r = f_.find(ft.key);
    if (r == Fragment::npos) {
      ft.type = f_[b_ty].key;
      ft.depth = f_[a].depth + 1;
      ft.extension = true;
      r = f_.insert(std::move(ft));
      if (f_.size() > cap_) throw FragmentBudget(cap_);
      sync();
    }
    c_.transports.push_back(TransportExtension{a, r, a_ty, b_ty, w->proof});
    c_.merge(a, r, Reason::Transport, "", w->proof);
    return true;
  }

  // Chosen witness for a pair of congruent types, cached on first use.
  std::optional<Path> witness(std::size_t a_ty, std::size_t b_ty) {
    auto key = std::make_pair(a_ty, b_ty);
    auto it = witness_cache_.find(key);
    if (it != witness_cache_.end()) return it->second;
    auto p = explain(a_ty, b_ty, 0);
    witness_cache_.emplace(key, p);
    return p;
  }

  bool usable(Reason r) const {
    if (r == Reason::Congruence) return true;
    if (layer_ == Layer::Inner) return r == Reason::MarkEndpoints || r == Reason::Internal;
    return r == Reason::Outer;
  }

  Term path_type(std::size_t i) {
    Term ty = f_[i].type;
    if (layer_ == Layer::Inner) return ty;
    return chk_.outer_view(ctx_, ty);
  }

  // A path from the key of i to the key of j, from homogeneous derivations.
  std::optional<Path> explain(std::size_t i, std::size_t j, int depth) {
    if (i == j) return refl_path(layer_, path_type(i), f_[i].key);
    if (depth > 6) return std::nullopt;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(f_.size());
    for (std::size_t k = 0; k < c_.witnesses.size(); ++k) {
      const auto& d = c_.witnesses[k];
      if (!usable(d.reason)) continue;
      adj[d.a].push_back({d.b, k});
      adj[d.b].push_back({d.a, k});
    }
    std::vector<std::size_t> from(f_.size(), Fragment::npos), via(f_.size(), 0);
    std::deque<std::size_t> queue{i};
    from[i] = i;
    while (!queue.empty() && from[j] == Fragment::npos) {
      std::size_t u = queue.front();
      queue.pop_front();
      for (auto [v, k] : adj[u]) {
        if (from[v] != Fragment::npos) continue;
        from[v] = u;
        via[v] = k;
        queue.push_back(v);
      }
    }
    if (from[j] == Fragment::npos) return std::nullopt;
    std::vector<std::pair<std::size_t, std::size_t>> hops;  // (node, edge into node)
    for (std::size_t v = j; v != i; v = from[v]) hops.push_back({v, via[v]});
    std::reverse(hops.begin(), hops.end());
    std::optional<Path> acc;
    std::size_t at = i;
    for (auto [v, k] : hops) {
      auto step = edge_path(k, at, v, depth);
      if (!step) return std::nullopt;
      acc = acc ? compose(layer_, *acc, *step) : *step;
      at = v;
    }
    return acc;
  }

  std::optional<Path> edge_path(std::size_t k, std::size_t from, std::size_t to, int depth) {
    const Derivation& d = c_.witnesses[k];
    if (d.reason != Reason::Congruence) {
      if (!d.witness) return std::nullopt;
      Path p{path_type(d.a), f_[d.a].key, f_[d.b].key, d.witness};
      return from == d.a ? p : inverse(layer_, p);
    }
    return congruence_path(from, to, depth);
  }

  std::optional<Path> congruence_path(std::size_t from, std::size_t to, int depth) {
    const Shape& su = c_.shapes[from];
    const Shape& sv = c_.shapes[to];
    if (!su.same_operator(sv)) return std::nullopt;
    Term cur = f_[from].key;
    Term cod = path_type(from);
    std::optional<Path> acc;
    std::size_t arg = 0;
    for (std::size_t pos = 0; pos < su.opaque.size(); ++pos) {
      if (su.opaque[pos] != nullptr) continue;
      std::size_t x = su.args[arg], y = sv.args[arg];
      ++arg;
      if (x == y) continue;
      if (binders_of(cur->kind, pos) != 0) return std::nullopt;
      auto sub = explain(x, y, depth + 1);
      if (!sub) return std::nullopt;
      std::vector<Term> kids;
      for (std::size_t q = 0; q < cur->kids.size(); ++q)
        kids.push_back(q == pos ? var(0) : weaken(cur->kids[q], 1, static_cast<std::uint32_t>(binders_of(cur->kind, q))));
      Term fn = make(cur->kind, kids, cur->n, cur->name);
      // The hole must not occur in the type of the whole term.
      try {
        ctx_.push(f_[x].type);
        Term ty = chk_.normalize(ctx_, chk_.infer(ctx_, fn));
        ctx_.pop();
        Term s;
        if (!try_strengthen(ty, 1, 0, s) || s != f_[from].type) return std::nullopt;
      } catch (const TypeError&) {
        ctx_.pop();
        return std::nullopt;
      }
      Path step = ap(layer_, *sub, fn, cod);
      acc = acc ? compose(layer_, *acc, step) : step;
      std::vector<Term> next = cur->kids;
      next[pos] = f_[y].key;
      cur = make(cur->kind, next, cur->n, cur->name);
    }
    if (!acc) return refl_path(layer_, cod, cur);
    return acc;
  }

  Congruence& c_;
  Fragment& f_;
  Checker chk_;
  Context ctx_;
  std::size_t cap_;
  Layer layer_;
  std::set<std::pair<std::size_t, std::size_t>> attempted_;
  std::set<std::pair<std::size_t, std::size_t>> unwitnessed_;
  std::map<std::pair<std::size_t, std::size_t>, std::optional<Path>> witness_cache_;
};

}  // namespace

Congruence generate(const Signature& sig, const Fragment& f, CongruenceMode mode, const Config& cfg,
                    const std::vector<OuterSeed>& seeds, bool use_marks) {
  Congruence c;
  c.fragment = f;
  c.mode = mode;
  Engine e(sig, c, cfg, !seeds.empty());
  e.sync();
  e.add_types();
  if (use_marks) e.mark_instances(sig);
  e.seed(seeds);
  for (bool changed = true; changed;) {
    changed = false;
    if (mode == CongruenceMode::UIP) changed |= e.internal_equalities();
    changed |= e.close();
    changed |= e.fibrancy();
  }
  return c;
}

// ---------------------------------------------------------------------------
// quotient

std::optional<std::size_t> QuotientFragment::lookup(const Shape& s) const {
  auto it = index.find(encode(s, s.args));
  if (it == index.end()) return std::nullopt;
  return table[it->second].result;
}

std::vector<std::size_t> QuotientFragment::eval_all(const Congruence& c) const {
  const std::size_t n = c.fragment.size();
  std::vector<std::size_t> out(n, Fragment::npos);
  std::function<std::size_t(std::size_t)> go = [&](std::size_t t) {
    if (out[t] != Fragment::npos) return out[t];
    const Shape& s = c.shapes[t];
    std::size_t r = class_of[t];
    if (!s.args.empty()) {
      Shape q = s;
      for (auto& a : q.args) a = go(a);
      if (auto hit = lookup(q)) r = *hit;
    }
    return out[t] = r;
  };
  for (std::size_t i = 0; i < n; ++i) go(i);
  return out;
}

QuotientFragment quotient(const Congruence& c) {
  QuotientFragment q;
  const Fragment& f = c.fragment;
  std::map<std::size_t, std::size_t> id_of_root;
  q.class_of.resize(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    std::size_t r = c.find(i);
    auto [it, fresh] = id_of_root.emplace(r, q.representative.size());
    if (fresh) q.representative.push_back(r);
    q.class_of[i] = it->second;
  }
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Shape& s = c.shapes[i];
    if (s.args.empty()) continue;
    QuotientOp op{s, q.class_of[i]};
    for (auto& a : op.shape.args) a = q.class_of[a];
    if (!q.index.emplace(encode(op.shape, op.shape.args), q.table.size()).second) continue;
    // Apply the former to the representatives and normalize into a class.
    std::vector<Term> kids = f[i].key->kids;
    std::size_t arg = 0;
    for (std::size_t pos = 0; pos < kids.size(); ++pos) {
      if (s.opaque[pos] != nullptr) continue;
      const Term& rep = f[q.representative[op.shape.args[arg++]]].key;
      if (s.motive == 1 && pos == 2) kids[pos] = weaken(rep, 2);
      else if (s.motive == 2 && pos == 2) kids[pos] = app(app(weaken(rep, 2), var(1)), var(0));
      else kids[pos] = rep;
    }
    Term applied = normalize_weak(make(f[i].key->kind, kids, f[i].key->n, f[i].key->name));
    std::size_t hit = f.find(applied);
    if (hit != Fragment::npos) op.result = q.class_of[hit];
    q.table.push_back(std::move(op));
  }
  return q;
}

Report check_effectiveness(const Congruence& c, const QuotientFragment& q) {
  Report r;
  const std::size_t n = c.fragment.size();
  std::vector<std::size_t> image = q.eval_all(c);
  for (const auto& d : c.witnesses) {
    ++r.checked;
    if (image[d.a] != image[d.b]) {
      r.ok = false;
      r.message = std::string("congruent pair separated by the quotient map (") + reason_name(d.reason) + ")";
      r.witness = std::make_pair(d.a, d.b);
      return r;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    ++r.checked;
    std::size_t rep = q.representative[image[i]];
    if (c.find(i) != c.find(rep)) {
      r.ok = false;
      r.message = "quotient map identifies terms that are not congruent";
      r.witness = std::make_pair(i, rep);
      return r;
    }
  }
  return r;
}

Report check_strong_lifting(const Congruence& c, const QuotientFragment& q) {
  Report r;
  const std::size_t n = c.fragment.size();
  std::vector<std::size_t> image = q.eval_all(c);
  std::vector<char> hit(q.representative.size(), 0);
  for (std::size_t i = 0; i < n; ++i)
    if (image[i] < hit.size()) hit[image[i]] = 1;
  for (std::size_t k = 0; k < hit.size(); ++k) {
    ++r.checked;
    if (!hit[k]) {
      r.ok = false;
      r.message = "class " + std::to_string(k) + " has no preimage in the fragment";
      r.witness = std::make_pair(k, k);
      return r;
    }
  }
  for (std::size_t t = 0; t < q.table.size(); ++t) {
    ++r.checked;
    const QuotientOp& op = q.table[t];
    bool found = false;
    for (std::size_t i = 0; i < n && !found; ++i) {
      const Shape& s = c.shapes[i];
      if (!s.same_operator(op.shape) || image[i] != op.result) continue;
      bool args = true;
      for (std::size_t a = 0; a < s.args.size() && args; ++a) args = image[s.args[a]] == op.shape.args[a];
      found = args;
    }
    if (!found) {
      r.ok = false;
      r.message = "operation entry " + std::to_string(t) + " has no preimage in the fragment";
      r.witness = std::make_pair(t, op.result);
      return r;
    }
  }
  return r;
}

}  // namespace wtt
