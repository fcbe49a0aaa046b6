#include "lpcheck/lint.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include <json.hpp>

#include "lpcheck/syntax.hpp"
#include "parse_internal.hpp"

namespace lpcheck {

using K = Formula::Kind;

namespace {

bool disjoint_atoms(const Formula& a, const Formula& b) {
  auto x = atoms_of(a);
  auto y = atoms_of(b);
  return std::none_of(x.begin(), x.end(), [&](const std::string& s) { return y.count(s) != 0; });
}

// Visits every formula and term node, including those under binders.
void walk(const Formula& f, const std::function<void(const Formula&)>& on_formula,
          const std::function<void(const Term&)>& on_term);

void walk(const Term& t, const std::function<void(const Formula&)>& on_formula,
          const std::function<void(const Term&)>& on_term) {
  on_term(t);
  if (t.kind() == Term::Kind::SetAbs || t.kind() == Term::Kind::Quote) walk(t.body(), on_formula, on_term);
}

void walk(const Formula& f, const std::function<void(const Formula&)>& on_formula,
          const std::function<void(const Term&)>& on_term) {
  on_formula(f);
  switch (f.kind()) {
    case K::Atom:
    case K::Named:
      return;
    case K::Truth:
      walk(f.term(), on_formula, on_term);
      return;
    case K::Member:
      walk(f.term(), on_formula, on_term);
      walk(f.rhs_term(), on_formula, on_term);
      return;
    case K::Not:
      walk(f.left(), on_formula, on_term);
      return;
    case K::And:
    case K::Or:
    case K::Imp:
      walk(f.left(), on_formula, on_term);
      walk(f.right(), on_formula, on_term);
      return;
  }
}

bool is_var(const Term& t, const std::string& x) { return t.kind() == Term::Kind::Var && t.name() == x; }

// `x in x` with x free in `f`.
bool self_member(const Formula& f, const std::string& x) {
  switch (f.kind()) {
    case K::Atom:
    case K::Named:
      return false;
    case K::Member:
      if (is_var(f.term(), x) && is_var(f.rhs_term(), x)) return true;
      [[fallthrough]];
    case K::Truth: {
      auto in_term = [&](const Term& t) {
        if (t.kind() == Term::Kind::Quote) return self_member(t.body(), x);
        if (t.kind() == Term::Kind::SetAbs) return t.name() != x && self_member(t.body(), x);
        return false;
      };
      return in_term(f.term()) || (f.is(K::Member) && in_term(f.rhs_term()));
    }
    case K::Not:
      return self_member(f.left(), x);
    case K::And:
    case K::Or:
    case K::Imp:
      return self_member(f.left(), x) || self_member(f.right(), x);
  }
  return false;
}

void add_flag(std::vector<std::string>& flags, std::string flag) {
  if (std::find(flags.begin(), flags.end(), flag) == flags.end()) flags.push_back(std::move(flag));
}

void generator_flags(const Formula& f, const DefEnv& env, std::vector<std::string>& flags) {
  if (has_self_membership_abstraction(f)) add_flag(flags, "self-membership-abstraction");
  auto fixed = truth_fixed_points(env);
  for (const auto& c : constants_of(f))
    if (std::find(fixed.begin(), fixed.end(), c) != fixed.end()) add_flag(flags, "truth-fixed-point:" + c);
}

}  // namespace

std::string_view to_string(ParadoxPattern p) {
  switch (p) {
    case ParadoxPattern::ExFalso:
      return "ex-falso";
    case ParadoxPattern::NegatedAntecedent:
      return "negated-antecedent";
    case ParadoxPattern::IrrelevantTautology:
      return "irrelevant-tautology";
  }
  return "?";
}

std::string_view pattern_text(ParadoxPattern p) {
  switch (p) {
    case ParadoxPattern::ExFalso:
      return "(A & ~A) -> B";
    case ParadoxPattern::NegatedAntecedent:
      return "~A -> (A -> B)";
    case ParadoxPattern::IrrelevantTautology:
      return "A -> (B -> B)";
  }
  return "?";
}

std::optional<ParadoxPattern> match_paradox(const Formula& f) {
  if (!f.is(K::Imp)) return std::nullopt;
  const Formula& l = f.left();
  const Formula& r = f.right();
  if (l.is(K::And)) {
    const Formula& a = l.left();
    const Formula& b = l.right();
    bool contradiction = (b.is(K::Not) && formulas_equal(b.left(), a)) || (a.is(K::Not) && formulas_equal(a.left(), b));
    if (contradiction && disjoint_atoms(l, r)) return ParadoxPattern::ExFalso;
  }
  if (l.is(K::Not) && r.is(K::Imp) && formulas_equal(l.left(), r.left()) && disjoint_atoms(l, r.right()))
    return ParadoxPattern::NegatedAntecedent;
  if (r.is(K::Imp) && formulas_equal(r.left(), r.right()) && disjoint_atoms(l, r.left()))
    return ParadoxPattern::IrrelevantTautology;
  return std::nullopt;
}

bool has_self_membership_abstraction(const Formula& f) {
  bool found = false;
  walk(
      f, [](const Formula&) {},
      [&](const Term& t) {
        if (t.kind() == Term::Kind::SetAbs && self_member(t.body(), t.name())) found = true;
      });
  return found;
}

std::vector<std::string> truth_fixed_points(const DefEnv& env) {
  std::vector<std::string> out;
  for (const auto& [name, definiens] : env.entries()) {
    bool hit = false;
    walk(
        definiens,
        [&](const Formula& g) {
          if (g.is(K::Truth) && g.term().kind() == Term::Kind::Const && g.term().name() == name) hit = true;
        },
        [](const Term&) {});
    if (hit) out.push_back(name);
  }
  return out;
}

LintFinding lint_formula(const Formula& f, const DefEnv& env) {
  LintFinding out;
  out.text = render_formula(f);
  out.sharing = check_variable_sharing(f);
  out.paradox = match_paradox(f);
  out.violation = out.sharing == SharingVerdict::Violation || out.paradox.has_value();
  out.schemas = classify_axiom(f);
  if (std::find(out.schemas.begin(), out.schemas.end(), SchemaId::AX10) != out.schemas.end())
    add_flag(out.flags, "AX10-advisory");
  generator_flags(f, env, out.flags);
  return out;
}

LintReport lint_text(std::string_view text) {
  LintReport report;
  DefEnv env;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++line_no;
    start = end + 1;

    parse::TokenStream ts(parse::lex(line, line_no));
    if (!ts.at_end()) {
      if (ts.at_word("def") && ts.at(parse::Tok::UpperIdent, 1)) {
        ts.next();
        const auto& name = ts.next();
        ts.expect(parse::Tok::Assign, "':='");
        Formula definiens = ts.formula();
        if (!ts.at_end()) ts.fail("unexpected '" + ts.peek().text + "'");
        try {
          env.define(name.text, definiens);
        } catch (const FormulaError& e) {
          ts.fail_at(name, e.what());
        }
        LintFinding d;
        d.line = line_no;
        d.definition = true;
        d.text = "def " + name.text + " := " + render_formula(definiens);
        generator_flags(Formula::named(name.text), env, d.flags);
        generator_flags(definiens, env, d.flags);
        report.findings.push_back(std::move(d));
      } else {
        const auto& first = ts.peek();
        Formula f = ts.formula();
        if (!ts.at_end()) ts.fail("unexpected '" + ts.peek().text + "'");
        for (const auto& c : constants_of(f))
          if (!env.contains(c)) ts.fail_at(first, "undeclared constant '" + c + "'");
        LintFinding finding = lint_formula(f, env);
        finding.line = line_no;
        if (finding.violation) ++report.violations;
        report.findings.push_back(std::move(finding));
      }
    }
    if (end == text.size()) break;
  }
  return report;
}

std::string render_lint(const LintReport& report, Format format) {
  if (format == Format::Json) {
    using nlohmann::ordered_json;
    ordered_json doc;
    auto items = ordered_json::array();
    for (const auto& f : report.findings) {
      ordered_json rec;
      rec["line"] = f.line;
      rec["formula"] = f.text;
      if (f.definition) {
        rec["definition"] = true;
      } else {
        rec["sharing"] = std::string(to_string(f.sharing));
        rec["paradox"] = f.paradox ? ordered_json(std::string(pattern_text(*f.paradox))) : ordered_json();
        rec["violation"] = f.violation;
        auto schemas = ordered_json::array();
        for (SchemaId s : f.schemas) schemas.push_back(std::string(to_string(s)));
        rec["schemas"] = std::move(schemas);
      }
      rec["flags"] = f.flags;
      items.push_back(std::move(rec));
    }
    doc["findings"] = std::move(items);
    doc["violations"] = report.violations;
    return doc.dump(2) + "\n";
  }
  std::ostringstream os;
  for (const auto& f : report.findings) {
    os << "line " << f.line << ": " << f.text;
    if (!f.definition) {
      os << "\n  sharing: " << to_string(f.sharing);
      if (f.paradox) os << "\n  paradox: " << pattern_text(*f.paradox) << " with atom-disjoint A, B";
      os << "\n  verdict: " << (f.violation ? "violation" : "ok");
      if (!f.schemas.empty()) {
        os << "\n  schemas:";
        for (SchemaId s : f.schemas) os << " " << to_string(s);
      }
    }
    for (const auto& flag : f.flags) os << "\n  flag: " << flag;
    os << "\n";
  }
  os << "violations: " << report.violations << "\n";
  return os.str();
}

}  // namespace lpcheck
