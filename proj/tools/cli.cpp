#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "wtt/certify.hpp"
#include "wtt/congruence.hpp"
#include "wtt/sexpr.hpp"
#include "wtt/strictify.hpp"
#include "wtt/two_level.hpp"
#include "wtt/typechecker.hpp"

namespace wtt::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr int kSchema = 1;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file, with the file location in the message.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot read " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// ---------------------------------------------------------------------------
// .wtt files

struct Item {
  int line = 0;
  std::string kind;
  std::string name, name2;  // ctx / singleton binders
  std::vector<SExpr> lhs, rhs;
};

struct WorkFile {
  std::string path;
  std::optional<std::string> mode;
  std::optional<std::set<std::string>> marks;
  bool jbeta_marks = false;
  std::string sig_text;
  std::vector<std::string> sig_origin;  // file:line per signature line
  std::vector<Item> items;
};

struct LogicalLine {
  int number = 0;
  std::string text;
};

// Comments stripped; lines starting with whitespace continue the previous one.
std::vector<LogicalLine> logical_lines(const std::string& text) {
  std::vector<LogicalLine> out;
  std::istringstream in(text);
  std::string raw;
  int n = 0;
  while (std::getline(in, raw)) {
    ++n;
    if (auto c = raw.find("--"); c != std::string::npos) raw.resize(c);
    std::string t = trim(raw);
    if (t.empty()) continue;
    bool cont = !raw.empty() && (raw[0] == ' ' || raw[0] == '\t');
    if (cont && !out.empty()) out.back().text += " " + t;
    else out.push_back({n, t});
  }
  return out;
}

SExpr group(const std::vector<SExpr>& parts, int line) {
  if (parts.empty()) throw InputError("line " + std::to_string(line) + ": missing expression");
  if (parts.size() == 1) return parts[0];
  SExpr e;
  e.is_atom = false;
  e.items = parts;
  e.line = parts[0].line;
  e.column = parts[0].column;
  return e;
}

// Splits at the first top-level atom `sep`.
bool split_at(const std::vector<SExpr>& parts, const std::string& sep, std::vector<SExpr>& l, std::vector<SExpr>& r) {
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].is_atom && parts[i].atom == sep) {
      l.assign(parts.begin(), parts.begin() + static_cast<std::ptrdiff_t>(i));
      r.assign(parts.begin() + static_cast<std::ptrdiff_t>(i) + 1, parts.end());
      return true;
    }
  }
  return false;
}

void append_signature(WorkFile& w, const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string raw;
  int n = 0;
  while (std::getline(in, raw)) {
    ++n;
    w.sig_text += raw + "\n";
    w.sig_origin.push_back(origin + ":" + std::to_string(n));
  }
}

WorkFile parse_work_file(const std::string& path) {
  WorkFile w;
  w.path = path;
  const std::string text = read_file(path);
  const auto dir = std::filesystem::path(path).parent_path();
  for (const auto& ll : logical_lines(text)) {
    const std::string where = path + ":" + std::to_string(ll.number);
    auto sp = ll.text.find_first_of(" \t");
    std::string head = ll.text.substr(0, sp);
    std::string rest = sp == std::string::npos ? std::string() : trim(ll.text.substr(sp));
    if (head == "mode") {
      if (rest != "weak" && rest != "strong" && rest != "two-level")
        throw InputError(where + ": mode must be weak, strong or two-level");
      w.mode = rest;
    } else if (head == "marks") {
      std::set<std::string> m;
      std::istringstream ns(rest);
      for (std::string s; ns >> s;) m.insert(s);
      w.marks = m;
    } else if (head == "include") {
      if (rest.empty()) throw InputError(where + ": include needs a path");
      auto p = (dir / rest).string();
      append_signature(w, read_file(p), p);
    } else if (head == "jbeta-marks") {
      w.jbeta_marks = true;
    } else if (head == "gen" || head == "mark") {
      append_signature(w, ll.text, where);
    } else {
      Item it;
      it.line = ll.number;
      it.kind = head;
      std::vector<SExpr> parts;
      try {
        parts = read_sexprs(rest, ll.number);
      } catch (const SyntaxError& e) {
        throw InputError(where + ": " + e.what());
      }
      if (head == "ctx" || head == "singleton") {
        std::size_t names = head == "ctx" ? 1 : 2;
        std::vector<SExpr> l, r;
        if (!split_at(parts, ":", l, r) || l.size() != names || !l[0].is_atom || !l.back().is_atom)
          throw InputError(where + ": expected " + head + (names == 1 ? " <name>" : " <y> <q>") + " : <type>");
        it.name = l[0].atom;
        it.name2 = l.back().atom;
        if (head == "singleton") {
          if (r.size() != 2) throw InputError(where + ": expected singleton <y> <q> : <outer type> <center>");
          it.rhs = {r[0]};
          it.lhs = {r[1]};
        } else {
          it.rhs = r;
        }
      } else if (head == "check" || head == "reject") {
        if (!split_at(parts, ":", it.lhs, it.rhs)) throw InputError(where + ": expected " + head + " <term> : <type>");
      } else if (head == "equal" || head == "distinct") {
        if (!split_at(parts, "=", it.lhs, it.rhs)) throw InputError(where + ": expected " + head + " <term> = <term>");
      } else if (head == "infer") {
        it.lhs = parts;
      } else {
        throw InputError(where + ": unknown directive '" + head + "'");
      }
      if (head != "ctx" && head != "singleton") group(it.lhs, ll.number);
      if (head != "infer") group(it.rhs, ll.number);
      w.items.push_back(std::move(it));
    }
  }
  return w;
}

Signature build_signature(const WorkFile& w, bool jbeta, const Config& cfg) {
  Signature s;
  try {
    s = parse_signature(w.sig_text);
    if (jbeta || w.jbeta_marks) s = with_jbeta_marks(s);
    return validate(s, cfg);
  } catch (const SignatureError& e) {
    std::string where;
    if (e.line() >= 1 && static_cast<std::size_t>(e.line()) <= w.sig_origin.size())
      where = w.sig_origin[static_cast<std::size_t>(e.line() - 1)] + ": ";
    throw InputError(where + e.what());
  } catch (const SyntaxError& e) {
    throw InputError(std::string("signature: ") + e.what());
  }
}

Signature load_signature_file(const std::string& path, bool jbeta, const Config& cfg) {
  WorkFile w;
  append_signature(w, read_file(path), path);
  return build_signature(w, jbeta, cfg);
}

Mode mode_from(const std::string& name, const std::optional<std::set<std::string>>& marks) {
  std::set<std::string> only;
  if (marks) {
    only = *marks;
    // Present but empty: no mark is active.
    if (only.empty()) only.insert("");
  }
  if (name == "strong") return Mode::strong(only);
  if (name == "two-level") return Mode::two_level(only);
  return Mode::weak();
}

json error_json(const std::exception& e) {
  json j;
  if (const auto* te = dynamic_cast<const TypeError*>(&e)) {
    j["code"] = error_code_name(te->code());
    j["message"] = te->what();
    if (!te->lhs().empty()) j["inferred"] = te->lhs();
    if (!te->rhs().empty()) j["expected"] = te->rhs();
  } else if (dynamic_cast<const SyntaxError*>(&e)) {
    j["code"] = "SyntaxError";
    j["message"] = e.what();
  } else if (dynamic_cast<const ScopeError*>(&e)) {
    j["code"] = "ScopeError";
    j["message"] = e.what();
  } else {
    j["code"] = "Error";
    j["message"] = e.what();
  }
  return j;
}

bool undecided(const std::exception& e) {
  const auto* te = dynamic_cast<const TypeError*>(&e);
  return te && (te->code() == ErrorCode::Undecided || te->code() == ErrorCode::BudgetExceeded);
}

// Checks that `ty` is a type of either layer.
void check_type(Checker& chk, Context& ctx, const Term& ty) {
  if (chk.mode().kind == TheoryMode::TwoLevel && chk.is_outer_type(ctx, ty)) chk.check_outer_type(ctx, ty);
  else chk.type_level(ctx, ty);
}

struct Tally {
  std::size_t ok = 0, failed = 0, unknown = 0, skipped = 0;

  int exit_code() const { return failed ? kFailure : unknown ? kUnknown : kOk; }
  json to_json() const { return {{"ok", ok}, {"failed", failed}, {"unknown", unknown}, {"skipped", skipped}}; }
};

void emit(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

// ---------------------------------------------------------------------------
// Subcommands

int cmd_check(const std::string& path, const std::string& mode_opt, bool as_json, const Config& cfg,
              std::ostream& out) {
  WorkFile w = parse_work_file(path);
  const std::string mode = !mode_opt.empty() ? mode_opt : w.mode ? *w.mode : cfg.mode;
  Signature sig = build_signature(w, false, cfg);
  Checker chk(sig, mode_from(mode, w.marks), cfg);
  Context ctx;
  Tally tally;
  json items = json::array();
  bool stop = false;
  for (const auto& it : w.items) {
    json r = {{"line", it.line}, {"kind", it.kind}};
    if (stop) {
      r["status"] = "skipped";
      ++tally.skipped;
      items.push_back(r);
      continue;
    }
    auto names = ctx.names();
    try {
      if (it.kind == "ctx") {
        Term ty = sexpr_to_term(group(it.rhs, it.line), names);
        r["name"] = it.name;
        r["type"] = print_term(ty, names);
        chk.type_level(ctx, ty);
        ctx.push(ty, it.name);
        r["status"] = "ok";
      } else if (it.kind == "singleton") {
        Term ty = sexpr_to_term(it.rhs[0], names);
        Term c = sexpr_to_term(it.lhs[0], names);
        r["name"] = it.name + " " + it.name2;
        r["type"] = print_term(ty, names);
        r["center"] = print_term(c, names);
        ctx.push_singleton(ty, c, it.name, it.name2);
        try {
          chk.check_context(ctx);
        } catch (...) {
          ctx.pop();
          throw;
        }
        r["status"] = "ok";
      } else if (it.kind == "check" || it.kind == "reject") {
        Term t = sexpr_to_term(group(it.lhs, it.line), names);
        Term ty = sexpr_to_term(group(it.rhs, it.line), names);
        r["term"] = print_term(t, names);
        r["type"] = print_term(ty, names);
        if (it.kind == "check") {
          check_type(chk, ctx, ty);
          chk.check(ctx, t, ty);
          r["status"] = "ok";
        } else {
          try {
            check_type(chk, ctx, ty);
            chk.check(ctx, t, ty);
            r["status"] = "failed";
            r["error"] = {{"code", "Accepted"}, {"message", "the kernel accepted a judgement expected to fail"}};
          } catch (const TypeError& e) {
            r["status"] = "ok";
            r["rejected_with"] = error_code_name(e.code());
          }
        }
      } else if (it.kind == "infer") {
        Term t = sexpr_to_term(group(it.lhs, it.line), names);
        r["term"] = print_term(t, names);
        Term ty = chk.infer(ctx, t);
        r["type"] = print_term(chk.normalize(ctx, ty), names);
        r["status"] = "ok";
      } else {  // equal / distinct
        Term a = sexpr_to_term(group(it.lhs, it.line), names);
        Term b = sexpr_to_term(group(it.rhs, it.line), names);
        r["lhs"] = print_term(a, names);
        r["rhs"] = print_term(b, names);
        chk.infer(ctx, a);
        chk.infer(ctx, b);
        Conv c = chk.conv(ctx, a, b);
        r["convertible"] = c == Conv::Yes ? "yes" : c == Conv::No ? "no" : "undecided";
        bool want = it.kind == "equal";
        if (c == Conv::Undecided) r["status"] = "unknown";
        else r["status"] = (c == Conv::Yes) == want ? "ok" : "failed";
      }
    } catch (const std::exception& e) {
      r["status"] = undecided(e) ? "unknown" : "failed";
      r["error"] = error_json(e);
      if (it.kind == "ctx" || it.kind == "singleton") stop = true;
    }
    const std::string st = r["status"];
    if (st == "ok") ++tally.ok;
    else if (st == "unknown") ++tally.unknown;
    else ++tally.failed;
    items.push_back(r);
  }
  if (as_json) {
    emit(out, {{"schema", kSchema},
               {"command", "check"},
               {"file", path},
               {"mode", mode},
               {"items", items},
               {"summary", tally.to_json()},
               {"exit", tally.exit_code()}});
  } else {
    out << path << ": mode " << mode << "\n";
    for (const auto& r : items) {
      out << "  line " << r["line"].get<int>() << " " << r["kind"].get<std::string>() << " "
          << r["status"].get<std::string>();
      if (r.contains("type") && r["kind"] == "infer") out << " : " << r["type"].get<std::string>();
      if (r.contains("error")) out << ": " << r["error"]["message"].get<std::string>();
      out << "\n";
    }
    out << "summary: " << tally.ok << " ok, " << tally.failed << " failed, " << tally.unknown << " unknown, "
        << tally.skipped << " skipped\n";
  }
  return tally.exit_code();
}

int cmd_derive(const std::string& name, const std::vector<std::size_t>& sizes, std::optional<std::size_t> input,
               bool as_json, const Config& cfg, std::ostream& out) {
  if (name == "list") {
    if (as_json) {
      emit(out, {{"schema", kSchema},
                 {"command", "derive"},
                 {"combinators", combinator_names()},
                 {"inputs", cert_input_count()},
                 {"exit", static_cast<int>(kOk)}});
    } else {
      for (const auto& n : combinator_names()) out << n << "\n";
    }
    return kOk;
  }
  std::vector<std::size_t> inputs;
  if (input) {
    if (*input >= cert_input_count())
      throw CLI::ValidationError("--input", "must be below " + std::to_string(cert_input_count()));
    inputs.push_back(*input);
  } else {
    for (std::size_t i = 0; i < cert_input_count(); ++i) inputs.push_back(i);
  }
  json results = json::array();
  std::size_t passed = 0, failed = 0, judgements = 0;
  for (auto i : inputs) {
    CertOutcome o = certify_combinator(name, i, sizes, cfg);
    json r = {{"input", o.input}, {"carrier", o.carrier}, {"ok", o.ok}, {"judgements", o.judgements}};
    if (!o.ok) r["error"] = o.error;
    (o.ok ? passed : failed)++;
    judgements += o.judgements;
    results.push_back(r);
  }
  if (as_json) {
    emit(out, {{"schema", kSchema},
               {"command", "derive"},
               {"combinator", name},
               {"sizes", sizes},
               {"results", results},
               {"passed", passed},
               {"failed", failed},
               {"judgements", judgements},
               {"exit", failed ? kFailure : kOk}});
  } else {
    for (const auto& r : results) {
      out << name << " input " << r["input"].get<std::size_t>() << " [" << r["carrier"].get<std::string>()
          << "]: " << (r["ok"].get<bool>() ? "ok" : "FAILED");
      if (r.contains("error")) out << ": " << r["error"].get<std::string>();
      out << "\n";
    }
    out << name << ": " << passed << " passed, " << failed << " failed, " << judgements << " kernel checks\n";
  }
  return failed ? kFailure : kOk;
}

std::vector<std::string> print_class(const Congruence& c, const std::vector<std::size_t>& cls) {
  std::vector<std::string> out;
  for (auto i : cls) out.push_back(print_term(c.fragment[i].term, c.fragment.ctx.names()));
  return out;
}

int cmd_quotient(const std::string& path, unsigned depth, bool uip, bool jbeta, bool as_json, const Config& cfg,
                 std::ostream& out) {
  Signature sig = load_signature_file(path, jbeta, cfg);
  json j = {{"schema", kSchema},
            {"command", "quotient"},
            {"signature", path},
            {"depth", depth},
            {"mode", uip ? "uip" : "marked"}};
  int code = kOk;
  try {
    EnumOptions opt;
    opt.cfg = cfg;
    Fragment f = enumerate(sig, depth, {}, opt);
    Congruence c = generate(sig, f, uip ? CongruenceMode::UIP : CongruenceMode::MarkedOnly, cfg);
    QuotientFragment q = quotient(c);
    Report eff = check_effectiveness(c, q), lift = check_strong_lifting(c, q);
    json classes = json::array();
    std::size_t count = 0;
    for (const auto& cls : c.classes()) {
      ++count;
      if (cls.size() > 1) classes.push_back(print_class(c, cls));
    }
    j["fragment"] = {{"enumerated", f.size()},
                     {"total", c.fragment.size()},
                     {"mark_instances", c.instances.size()},
                     {"transports", c.transports.size()},
                     {"derivations", c.witnesses.size()},
                     {"unwitnessed_type_pairs", c.unwitnessed.size()},
                     {"fibrancy_gaps", c.fibrancy_gaps.size()}};
    j["class_count"] = count;
    j["classes"] = classes;
    j["effective"] = {{"ok", eff.ok}, {"checked", eff.checked}, {"message", eff.message}};
    j["strong_lifting"] = {{"ok", lift.ok}, {"checked", lift.checked}, {"message", lift.message}};
    code = eff.ok && lift.ok ? kOk : kFailure;
    j["verdict"] = code == kOk ? "ok" : "failed";
  } catch (const FragmentBudget& e) {
    j["verdict"] = "unknown";
    j["reason"] = e.what();
    code = kUnknown;
  }
  j["exit"] = code;
  if (as_json) {
    emit(out, j);
  } else {
    out << path << ": quotient at depth " << depth << " (" << j["mode"].get<std::string>() << ")\n";
    if (j.contains("reason")) {
      out << "unknown: " << j["reason"].get<std::string>() << "\n";
    } else {
      out << "fragment: " << j["fragment"]["total"] << " terms, " << j["class_count"] << " classes\n";
      for (const auto& cls : j["classes"]) {
        out << "  {";
        for (std::size_t i = 0; i < cls.size(); ++i) out << (i ? ", " : "") << cls[i].get<std::string>();
        out << "}\n";
      }
      out << "effective: " << (j["effective"]["ok"].get<bool>() ? "ok" : "FAILED") << ", strong lifting: "
          << (j["strong_lifting"]["ok"].get<bool>() ? "ok" : "FAILED") << "\n";
    }
  }
  return code;
}

int cmd_acyclic(const std::string& path, unsigned depth, bool induced, bool as_json, const Config& cfg,
                std::ostream& out) {
  Signature sig = load_signature_file(path, false, cfg);
  AcyclicityVerdict v = acyclicity_search(sig, depth, cfg);
  const auto names = v.inner.ctx.names();
  json unc = json::array();
  for (std::size_t k = 0; k < v.uncontracted.size() && k < 20; ++k)
    unc.push_back(print_term(v.words[v.uncontracted[k]].path.proof, names));
  json j = {{"schema", kSchema},
            {"command", "acyclic"},
            {"signature", path},
            {"depth", depth},
            {"verdict", v.certified() ? "CertifiedOnFragment" : "Unknown"},
            {"inner_terms", v.inner.size()},
            {"words", v.words.size()},
            {"loops", v.loops.size()},
            {"contracted", v.table.size()},
            {"uncontracted_count", v.uncontracted.size()},
            {"uncontracted", unc},
            {"budget_used", v.budget_used}};
  if (!v.reason.empty()) j["reason"] = v.reason;
  if (induced) {
    if (v.certified()) {
      Congruence c = induced_congruence(sig, v, cfg);
      json classes = json::array();
      for (const auto& cls : c.classes())
        if (cls.size() > 1) classes.push_back(print_class(c, cls));
      j["induced_classes"] = classes;
    } else {
      j["induced_classes"] = nullptr;
    }
  }
  const int code = v.certified() ? kOk : kUnknown;
  j["exit"] = code;
  if (as_json) {
    emit(out, j);
  } else {
    out << path << ": " << j["verdict"].get<std::string>() << " at depth " << depth << " (" << v.loops.size()
        << " loops over " << v.words.size() << " words, " << v.table.size() << " contracted)\n";
    if (!v.reason.empty()) out << "reason: " << v.reason << "\n";
    for (const auto& u : unc) out << "  uncontracted: " << u.get<std::string>() << "\n";
    if (j.contains("induced_classes") && j["induced_classes"].is_array())
      for (const auto& cls : j["induced_classes"]) {
        out << "  {";
        for (std::size_t i = 0; i < cls.size(); ++i) out << (i ? ", " : "") << cls[i].get<std::string>();
        out << "}\n";
      }
  }
  return code;
}

int cmd_strictify(const std::string& sig_path, const std::string& term_path, bool jbeta, bool as_json,
                  const Config& cfg, std::ostream& out) {
  WorkFile w = parse_work_file(term_path);
  WorkFile sw;
  append_signature(sw, read_file(sig_path), sig_path);
  sw.sig_text += w.sig_text;
  sw.sig_origin.insert(sw.sig_origin.end(), w.sig_origin.begin(), w.sig_origin.end());
  Signature sig = build_signature(sw, jbeta || w.jbeta_marks, cfg);
  std::set<std::string> marks;
  if (w.marks) {
    marks = *w.marks;
    if (marks.empty()) marks.insert("");
  }
  Checker strong(sig, Mode::strong(marks), cfg);
  Context ctx;
  Tally tally;
  json items = json::array();
  bool stop = false;
  for (const auto& it : w.items) {
    json r = {{"line", it.line}, {"kind", it.kind}};
    if (stop) {
      r["status"] = "skipped";
      ++tally.skipped;
      items.push_back(r);
      continue;
    }
    auto names = ctx.names();
    try {
      if (it.kind == "ctx") {
        Term ty = sexpr_to_term(group(it.rhs, it.line), names);
        r["name"] = it.name;
        r["type"] = print_term(ty, names);
        strong.type_level(ctx, ty);
        ctx.push(ty, it.name);
        r["status"] = "ok";
        ++tally.ok;
        items.push_back(r);
        continue;
      }
      if (it.kind != "check" && it.kind != "infer")
        throw InputError(term_path + ":" + std::to_string(it.line) + ": strictify takes ctx, check and infer lines");
      Term t = sexpr_to_term(group(it.lhs, it.line), names);
      Term ty = it.kind == "check" ? sexpr_to_term(group(it.rhs, it.line), names) : nullptr;
      r["term"] = print_term(t, names);
      if (ty) r["type"] = print_term(ty, names);
      StrictDerivation d = record_derivation(sig, ctx, t, ty, marks, cfg);
      r["rewrites"] = d.trace.size();
      r["replay"] = replay(sig, d, cfg);
      try {
        LiftResult lr = strictify_translate(sig, d, cfg);
        r["transports"] = lr.transports;
        r["marks_used"] = lr.marks_used;
        if (lr.t0) {
          const auto n0 = lr.ctx0.names();
          r["t0"] = print_term(lr.t0, n0);
          r["type0"] = print_term(lr.type0, n0);
        }
        if (lr.witness) {
          r["witness"] = print_term(lr.witness, lr.ctx0.names());
          r["witness_type"] = print_term(lr.witness_type, lr.ctx0.names());
        }
        r["round_trip"] = lr.round_trip;
        if (!lr.reason.empty()) r["reason"] = lr.reason;
        r["status"] = lr.lifted() ? "lifted" : "unknown";
      } catch (const UnsupportedMark& e) {
        r["status"] = "unsupported";
        r["reason"] = e.what();
      }
    } catch (const InputError&) {
      throw;
    } catch (const std::exception& e) {
      r["status"] = undecided(e) ? "unknown" : "failed";
      r["error"] = error_json(e);
      if (it.kind == "ctx") stop = true;
    }
    const std::string st = r["status"];
    if (st == "lifted") ++tally.ok;
    else if (st == "failed") ++tally.failed;
    else ++tally.unknown;
    items.push_back(r);
  }
  if (as_json) {
    emit(out, {{"schema", kSchema},
               {"command", "strictify"},
               {"signature", sig_path},
               {"file", term_path},
               {"items", items},
               {"summary", tally.to_json()},
               {"exit", tally.exit_code()}});
  } else {
    out << term_path << ": strictify over " << sig_path << "\n";
    for (const auto& r : items) {
      if (r["kind"] == "ctx") continue;
      out << "  line " << r["line"].get<int>() << " " << r["status"].get<std::string>();
      if (r.contains("term")) out << " " << r["term"].get<std::string>();
      if (r.contains("transports")) out << " (" << r["transports"].get<std::size_t>() << " transports)";
      if (r.contains("reason")) out << ": " << r["reason"].get<std::string>();
      if (r.contains("error")) out << ": " << r["error"]["message"].get<std::string>();
      out << "\n";
    }
    out << "summary: " << tally.ok << " lifted, " << tally.unknown << " unknown, " << tally.failed << " failed\n";
  }
  return tally.exit_code();
}

void report_error(std::ostream& out, std::ostream& err, bool as_json, const std::string& command,
                  const std::string& kind, const std::string& message, int code) {
  err << "wtt: " << message << "\n";
  if (as_json)
    emit(out, {{"schema", kSchema},
               {"command", command},
               {"error", {{"kind", kind}, {"message", message}}},
               {"exit", code}});
}

}  // namespace

StrictifyInput load_strictify_input(const std::string& sig_path, const std::string& term_path, bool jbeta,
                                    const Config& cfg) {
  WorkFile w = parse_work_file(term_path);
  WorkFile sw;
  append_signature(sw, read_file(sig_path), sig_path);
  sw.sig_text += w.sig_text;
  sw.sig_origin.insert(sw.sig_origin.end(), w.sig_origin.begin(), w.sig_origin.end());
  StrictifyInput in;
  in.sig = build_signature(sw, jbeta || w.jbeta_marks, cfg);
  if (w.marks) {
    in.marks = *w.marks;
    if (in.marks.empty()) in.marks.insert("");
  }
  Checker strong(in.sig, Mode::strong(in.marks), cfg);
  Context ctx;
  for (const auto& it : w.items) {
    auto names = ctx.names();
    if (it.kind == "ctx") {
      Term ty = sexpr_to_term(group(it.rhs, it.line), names);
      strong.type_level(ctx, ty);
      ctx.push(ty, it.name);
      continue;
    }
    if (it.kind != "check" && it.kind != "infer")
      throw InputError(term_path + ":" + std::to_string(it.line) + ": strictify takes ctx, check and infer lines");
    Term t = sexpr_to_term(group(it.lhs, it.line), names);
    Term ty = it.kind == "check" ? sexpr_to_term(group(it.rhs, it.line), names) : nullptr;
    in.entries.push_back({it.line, ctx, t, ty});
  }
  return in;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weak type theory workbench"};
  app.name(args.empty() ? "wtt" : std::filesystem::path(args[0]).filename().string());
  app.require_subcommand(1);
  bool as_json = false;
  std::string mode, file, sig_path, term_path, combinator;
  unsigned depth = 0;
  bool uip = false, jbeta = false, induced = false;
  std::vector<std::size_t> sizes;
  std::size_t input = 0;

  auto* check = app.add_subcommand("check", "Typecheck a .wtt file");
  check->add_option("file", file, ".wtt file")->required();
  check->add_option("--mode", mode, "weak, strong or two-level")
      ->check(CLI::IsMember({"weak", "strong", "two-level"}));

  auto* derive = app.add_subcommand("derive", "Certify a derived combinator over the generated inputs");
  derive->add_option("combinator", combinator, "combinator name, or list")->required();
  derive->add_option("sizes", sizes, "telescope lengths for id_tele (n) and elim_tele (n m)");
  auto* input_opt = derive->add_option("--input", input, "a single input index");

  auto* quot = app.add_subcommand("quotient", "Fibrant congruence and quotient of a signature fragment");
  quot->add_option("sig", sig_path, ".sig file")->required();
  auto* qdepth = quot->add_option("--depth", depth, "enumeration depth");
  quot->add_flag("--uip", uip, "also identify the endpoints of every enumerated internal equality");
  quot->add_flag("--jbeta-marks", jbeta, "add the J-beta marks");

  auto* acyc = app.add_subcommand("acyclic", "Acyclicity search over outer words");
  acyc->add_option("sig", sig_path, ".sig file")->required();
  auto* adepth = acyc->add_option("--depth", depth, "word depth");
  acyc->add_flag("--induced", induced, "print the induced congruence when certified");

  auto* strict = app.add_subcommand("strictify", "Lift Strong-mode judgements to Weak mode");
  strict->add_option("sig", sig_path, ".sig file")->required();
  strict->add_option("terms", term_path, ".wtt file of ctx, check and infer lines")->required();
  strict->add_flag("--jbeta-marks", jbeta, "add the J-beta marks");

  for (auto* sub : {check, derive, quot, acyc, strict}) sub->add_flag("--json", as_json, "JSON report on stdout");

  std::string command = "wtt";
  try {
    std::vector<std::string> rest(args.rbegin(), args.rend());
    if (!rest.empty()) rest.pop_back();
    app.parse(rest);
    for (auto* sub : app.get_subcommands()) command = sub->get_name();
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    for (auto* sub : app.get_subcommands()) command = sub->get_name();
    report_error(out, err, as_json, command, "usage", e.what(), kUsage);
    return kUsage;
  }

  Config cfg;
  try {
    cfg = config_from_env();
  } catch (const ConfigError& e) {
    bool missing = std::string(e.what()).rfind("cannot read", 0) == 0;
    report_error(out, err, as_json, command, missing ? "io" : "config", e.what(), missing ? kIo : kUsage);
    return missing ? kIo : kUsage;
  }
  if (qdepth->count() == 0 && adepth->count() == 0) depth = cfg.enum_depth;

  try {
    if (command == "check") return cmd_check(file, mode, as_json, cfg, out);
    if (command == "derive") {
      std::optional<std::size_t> one;
      if (input_opt->count()) one = input;
      return cmd_derive(combinator, sizes, one, as_json, cfg, out);
    }
    if (command == "quotient") return cmd_quotient(sig_path, depth, uip, jbeta, as_json, cfg, out);
    if (command == "acyclic") return cmd_acyclic(sig_path, depth, induced, as_json, cfg, out);
    return cmd_strictify(sig_path, term_path, jbeta, as_json, cfg, out);
  } catch (const IoError& e) {
    report_error(out, err, as_json, command, "io", e.what(), kIo);
    return kIo;
  } catch (const CLI::ValidationError& e) {
    report_error(out, err, as_json, command, "usage", e.what(), kUsage);
    return kUsage;
  } catch (const std::invalid_argument& e) {
    report_error(out, err, as_json, command, "usage", e.what(), kUsage);
    return kUsage;
  } catch (const InputError& e) {
    report_error(out, err, as_json, command, "input", e.what(), kFailure);
    return kFailure;
  } catch (const std::exception& e) {
    report_error(out, err, as_json, command, "error", e.what(), kFailure);
    return kFailure;
  }
}

}  // namespace wtt::cli
