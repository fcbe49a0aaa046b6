#include "lpcheck/blocked.hpp"

#include <algorithm>
#include <cctype>

#include "lpcheck/syntax.hpp"

namespace lpcheck {

BlockedSetSpec make_empty() { return BlockedSetSpec{}; }

BlockedSetSpec make_curry_set(FormulaSet delta) {
  BlockedSetSpec s;
  s.kind = BlockedSetSpec::Kind::CurrySet;
  s.delta = std::move(delta);
  return s;
}

BlockedSetSpec make_curry_truth(FormulaSet delta, std::vector<std::string> lambda) {
  BlockedSetSpec s;
  s.kind = BlockedSetSpec::Kind::CurryTruth;
  s.delta = std::move(delta);
  s.lambda = std::move(lambda);
  if (s.lambda.empty()) s.lambda.push_back("T");
  return s;
}

BlockedSetSpec make_explicit(std::vector<Formula> formulas) {
  BlockedSetSpec s;
  s.kind = BlockedSetSpec::Kind::Explicit;
  s.formulas = std::move(formulas);
  return s;
}

BlockedSetSpec make_union(std::vector<BlockedSetSpec> members) {
  BlockedSetSpec s;
  s.kind = BlockedSetSpec::Kind::Union;
  s.members = std::move(members);
  return s;
}

Term curry_set_term(const Formula& falsum, const std::string& var) {
  Term x = Term::var(var);
  return Term::set_abs(var, Formula::imp(Formula::member(x, x), falsum));
}

// ---------------------------------------------------------------------------
// Folding

namespace {

// Each constant's definiens with its proper subformulas folded; an
// occurrence equal to the key folds to the constant.
struct FoldTable {
  std::vector<std::pair<std::string, Formula>> keys;
};

Formula fold_with(const Formula& f, const FoldTable& table);

Term fold_term(const Term& t, const FoldTable& table) {
  switch (t.kind()) {
    case Term::Kind::Var:
    case Term::Kind::Const:
      return t;
    case Term::Kind::SetAbs: {
      Formula b = fold_with(t.body(), table);
      return b.node() == t.body().node() ? t : Term::set_abs(t.name(), b);
    }
    case Term::Kind::Quote: {
      // quote() turns a folded Named body into the constant itself.
      Formula b = fold_with(t.body(), table);
      return b.node() == t.body().node() ? t : Term::quote(b);
    }
  }
  return t;
}

Formula fold_children(const Formula& f, const FoldTable& table) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
    case Formula::Kind::Named:
      return f;
    case Formula::Kind::Truth: {
      Term a = fold_term(f.term(), table);
      return a.node() == f.term().node() ? f : Formula::truth(a, f.name());
    }
    case Formula::Kind::Member: {
      Term l = fold_term(f.term(), table);
      Term r = fold_term(f.rhs_term(), table);
      if (l.node() == f.term().node() && r.node() == f.rhs_term().node()) return f;
      return Formula::member(l, r);
    }
    case Formula::Kind::Not: {
      Formula g = fold_with(f.left(), table);
      return g.node() == f.left().node() ? f : Formula::negate(g);
    }
    default: {
      Formula l = fold_with(f.left(), table);
      Formula r = fold_with(f.right(), table);
      if (l.node() == f.left().node() && r.node() == f.right().node()) return f;
      if (f.is(Formula::Kind::And)) return Formula::conj(l, r);
      if (f.is(Formula::Kind::Or)) return Formula::disj(l, r);
      return Formula::imp(l, r);
    }
  }
}

Formula fold_with(const Formula& f, const FoldTable& table) {
  Formula g = fold_children(f, table);
  for (const auto& [name, key] : table.keys)
    if (formulas_equal(g, key)) return Formula::named(name);
  return g;
}

FoldTable build_table(const DefEnv& env) {
  FoldTable table;
  for (const auto& [name, definiens] : env.entries()) {
    // A bare alias (C := D) would fold every D into C; aliases are not chased.
    if (definiens.is(Formula::Kind::Named)) continue;
    table.keys.emplace_back(name, fold_children(definiens, table));
  }
  return table;
}

const Formula* key_of(const FoldTable& table, const std::string& name) {
  for (const auto& [n, key] : table.keys)
    if (n == name) return &key;
  return nullptr;
}

bool in_delta(const Formula& folded_f, const FormulaSet& delta, const FoldTable& table) {
  if (delta.all) return true;
  return std::any_of(delta.items.begin(), delta.items.end(),
                     [&](const Formula& d) { return formulas_equal(fold_with(d, table), folded_f); });
}

// t = {x | x in x -> F} with x not free in F; returns F.
std::optional<Formula> curry_falsum(const Term& t) {
  if (t.kind() != Term::Kind::SetAbs) return std::nullopt;
  const Formula& body = t.body();
  if (!body.is(Formula::Kind::Imp)) return std::nullopt;
  const Formula& self = body.left();
  if (!self.is(Formula::Kind::Member)) return std::nullopt;
  const Term& a = self.term();
  const Term& b = self.rhs_term();
  if (a.kind() != Term::Kind::Var || b.kind() != Term::Kind::Var) return std::nullopt;
  if (a.name() != t.name() || b.name() != t.name()) return std::nullopt;
  if (free_vars(body.right()).count(t.name())) return std::nullopt;
  return body.right();
}

bool curry_membership(const Formula& g, const FormulaSet& delta, const FoldTable& table) {
  if (!g.is(Formula::Kind::Member)) return false;
  if (!terms_equal(g.term(), g.rhs_term())) return false;
  auto falsum = curry_falsum(g.term());
  return falsum && in_delta(*falsum, delta, table);
}

// c := P[c] -> F with P in Λ and F in Δ; returns P.
std::optional<std::string> curry_truth_predicate(const std::string& c, const BlockedSetSpec& spec,
                                                 const FoldTable& table) {
  const Formula* key = key_of(table, c);
  if (!key || !key->is(Formula::Kind::Imp)) return std::nullopt;
  const Formula& head = key->left();
  if (!head.is(Formula::Kind::Truth)) return std::nullopt;
  if (head.term().kind() != Term::Kind::Const || head.term().name() != c) return std::nullopt;
  if (std::find(spec.lambda.begin(), spec.lambda.end(), head.name()) == spec.lambda.end()) return std::nullopt;
  if (!in_delta(key->right(), spec.delta, table)) return std::nullopt;
  return head.name();
}

bool blocked_folded(const Formula& g, const BlockedSetSpec& spec, const FoldTable& table) {
  switch (spec.kind) {
    case BlockedSetSpec::Kind::Empty:
      return false;
    case BlockedSetSpec::Kind::Explicit:
      return std::any_of(spec.formulas.begin(), spec.formulas.end(),
                         [&](const Formula& v) { return formulas_equal(fold_with(v, table), g); });
    case BlockedSetSpec::Kind::Union:
      return std::any_of(spec.members.begin(), spec.members.end(),
                         [&](const BlockedSetSpec& m) { return blocked_folded(g, m, table); });
    case BlockedSetSpec::Kind::CurrySet:
      if (curry_membership(g, spec.delta, table)) return true;
      if (g.is(Formula::Kind::Named)) {
        const Formula* key = key_of(table, g.name());
        return key && curry_membership(*key, spec.delta, table);
      }
      return false;
    case BlockedSetSpec::Kind::CurryTruth:
      if (g.is(Formula::Kind::Named)) return curry_truth_predicate(g.name(), spec, table).has_value();
      if (g.is(Formula::Kind::Truth) && g.term().kind() == Term::Kind::Const) {
        auto pred = curry_truth_predicate(g.term().name(), spec, table);
        return pred && *pred == g.name();
      }
      return false;
  }
  return false;
}

}  // namespace

Formula fold_definitions(const Formula& f, const DefEnv& env) { return fold_with(f, build_table(env)); }

bool is_blocked(const Formula& f, const BlockedSetSpec& spec, const DefEnv& env) {
  if (spec.empty()) return false;
  FoldTable table = build_table(env);
  return blocked_folded(fold_with(f, table), spec, table);
}

// ---------------------------------------------------------------------------
// Text form

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

// Splits at `sep` outside brackets and double quotes.
std::vector<std::string> split_top(std::string_view s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  bool quoted = false;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '"') quoted = !quoted;
    if (quoted) continue;
    if (c == '(' || c == '{' || c == '[') ++depth;
    if (c == ')' || c == '}' || c == ']') --depth;
    if (c == sep && depth == 0) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  out.push_back(trim(s.substr(start)));
  return out;
}

[[noreturn]] void bad_spec(const std::string& why) { throw SyntaxError("blocked spec: " + why, 1, 1); }

FormulaSet parse_delta(const std::string& text) {
  if (text == "all" || text == "ALL") return FormulaSet::everything();
  std::vector<Formula> items;
  for (const auto& part : split_top(text, ',')) {
    if (part.empty()) bad_spec("empty formula in list");
    items.push_back(parse_formula(part));
  }
  return FormulaSet::of(std::move(items));
}

std::string render_delta(const FormulaSet& d) {
  if (d.all) return "all";
  std::string out;
  for (std::size_t i = 0; i < d.items.size(); ++i) {
    if (i) out += ", ";
    out += render_formula(d.items[i]);
  }
  return out;
}

}  // namespace

BlockedSetSpec parse_blocked_spec(std::string_view raw) {
  std::string text = trim(raw);
  if (text == "none" || text == "empty") return make_empty();
  auto open = text.find('(');
  if (open == std::string::npos || text.back() != ')') bad_spec("expected none, curry-set(...), curry-truth(...), explicit(...) or union(...)");
  std::string head = trim(std::string_view(text).substr(0, open));
  std::string inner = text.substr(open + 1, text.size() - open - 2);
  if (head == "curry-set") return make_curry_set(parse_delta(trim(inner)));
  if (head == "curry-truth") {
    auto parts = split_top(inner, ';');
    if (parts.size() > 2) bad_spec("curry-truth takes at most one ';'");
    std::vector<std::string> lambda;
    if (parts.size() == 2) {
      for (const auto& p : split_top(parts[1], ',')) {
        if (p.empty() || !std::isupper(static_cast<unsigned char>(p[0]))) bad_spec("truth predicate symbols are uppercase identifiers");
        lambda.push_back(p);
      }
    }
    return make_curry_truth(parse_delta(parts[0]), lambda);
  }
  if (head == "explicit") {
    std::vector<Formula> fs;
    if (!trim(inner).empty()) {
      for (const auto& p : split_top(inner, ',')) {
        if (p.size() < 2 || p.front() != '"' || p.back() != '"') bad_spec("explicit(...) takes double-quoted formulas");
        fs.push_back(parse_formula(std::string_view(p).substr(1, p.size() - 2)));
      }
    }
    return make_explicit(std::move(fs));
  }
  if (head == "union") {
    std::vector<BlockedSetSpec> ms;
    for (const auto& p : split_top(inner, ',')) ms.push_back(parse_blocked_spec(p));
    return make_union(std::move(ms));
  }
  bad_spec("unknown form '" + head + "'");
}

std::string to_string(const BlockedSetSpec& spec) {
  switch (spec.kind) {
    case BlockedSetSpec::Kind::Empty:
      return "none";
    case BlockedSetSpec::Kind::CurrySet:
      return "curry-set(" + render_delta(spec.delta) + ")";
    case BlockedSetSpec::Kind::CurryTruth: {
      std::string out = "curry-truth(" + render_delta(spec.delta) + "; ";
      for (std::size_t i = 0; i < spec.lambda.size(); ++i) {
        if (i) out += ", ";
        out += spec.lambda[i];
      }
      return out + ")";
    }
    case BlockedSetSpec::Kind::Explicit: {
      std::string out = "explicit(";
      for (std::size_t i = 0; i < spec.formulas.size(); ++i) {
        if (i) out += ", ";
        out += "\"" + render_formula(spec.formulas[i]) + "\"";
      }
      return out + ")";
    }
    case BlockedSetSpec::Kind::Union: {
      std::string out = "union(";
      for (std::size_t i = 0; i < spec.members.size(); ++i) {
        if (i) out += ", ";
        out += to_string(spec.members[i]);
      }
      return out + ")";
    }
  }
  return "none";
}

}  // namespace lpcheck
