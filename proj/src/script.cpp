#include "lpcheck/script.hpp"

#include <sstream>

#include <json.hpp>

#include "lpcheck/syntax.hpp"
#include "parse_internal.hpp"

namespace lpcheck {

using parse::Tok;
using parse::TokenStream;

namespace {

StepId step_id(TokenStream& ts) {
  const auto& t = ts.expect(Tok::Number, "a step id");
  auto id = StepId::parse(t.text);
  if (!id) ts.fail_at(t, "malformed step id '" + t.text + "'");
  return *id;
}

void comma(TokenStream& ts) { ts.expect(Tok::Comma, "','"); }

RuleOption option_word(TokenStream& ts, std::initializer_list<RuleOption> allowed) {
  const auto& t = ts.expect(Tok::LowerIdent, "an option");
  for (RuleOption o : allowed)
    if (to_string(o) == t.text) return o;
  ts.fail_at(t, "unexpected option '" + t.text + "'");
}

// Reads the argument list (without parentheses) for `rule`.
void read_args(TokenStream& ts, Justification& j) {
  switch (j.rule) {
    case Rule::Axiom: {
      const auto& t = ts.expect(Tok::UpperIdent, "a schema id");
      j.schema = schema_from_string(t.text);
      if (!j.schema) ts.fail_at(t, "unknown schema '" + t.text + "'");
      if (ts.at(Tok::Comma)) {
        ts.next();
        j.formula = ts.formula();
      }
      return;
    }
    case Rule::Premise: {
      const auto& t = ts.expect(Tok::Number, "a premise number");
      auto id = StepId::parse(t.text);
      if (!id || id->auxiliary() || id->number == 0) ts.fail_at(t, "premise numbers are positive integers");
      j.premise_index = id->number;
      return;
    }
    case Rule::Def:
      j.name = ts.expect(Tok::UpperIdent, "a constant").text;
      return;
    case Rule::TSchema:
      j.formula = ts.formula();
      if (ts.at(Tok::Comma)) {
        ts.next();
        j.name = ts.expect(Tok::UpperIdent, "a truth predicate").text;
      }
      return;
    case Rule::Abstraction:
      j.name = ts.expect(Tok::LowerIdent, "a variable").text;
      comma(ts);
      j.formula = ts.formula();
      return;
    case Rule::USpec:
      j.premises.push_back(step_id(ts));
      comma(ts);
      if (ts.at(Tok::LowerIdent) && ts.at(Tok::Comma, 1)) {
        j.name = ts.next().text;
        comma(ts);
      }
      j.term = ts.term();
      return;
    case Rule::MP:
    case Rule::MT:
    case Rule::Adj:
    case Rule::Trans:
      j.premises.push_back(step_id(ts));
      comma(ts);
      j.premises.push_back(step_id(ts));
      return;
    case Rule::SubstEq:
      j.premises.push_back(step_id(ts));
      comma(ts);
      j.premises.push_back(step_id(ts));
      if (ts.at(Tok::Comma)) {
        ts.next();
        j.option = option_word(ts, {RuleOption::Ltr, RuleOption::Rtl});
        if (j.option == RuleOption::Ltr) j.option = RuleOption::None;
      }
      return;
    case Rule::ConjGlb:
      j.premises.push_back(step_id(ts));
      comma(ts);
      if (ts.at(Tok::Number)) j.premises.push_back(step_id(ts));
      else j.option = option_word(ts, {RuleOption::Left, RuleOption::Right});
      return;
    case Rule::SimpL:
    case Rule::SimpR:
    case Rule::Contraction:
    case Rule::Idem:
    case Rule::Resid:
    case Rule::Deresid:
      j.premises.push_back(step_id(ts));
      return;
    case Rule::TEnthymeme:
      j.premises.push_back(step_id(ts));
      comma(ts);
      j.formula = ts.formula();
      while (ts.at(Tok::Comma)) {
        ts.next();
        if (ts.at(Tok::UpperIdent)) j.name = ts.next().text;
        else j.option = option_word(ts, {RuleOption::Converse});
      }
      return;
  }
}

bool takes_no_args(const Justification& j) {
  return (j.rule == Rule::Premise && !j.premise_index);
}

Justification read_justification(TokenStream& ts) {
  const auto& name = ts.expect(Tok::UpperIdent, "a rule name");
  auto rule = rule_from_string(name.text);
  if (!rule) ts.fail_at(name, "unknown rule '" + name.text + "'");
  Justification j;
  j.rule = *rule;
  bool parens = ts.at(Tok::LParen);
  if (parens) {
    ts.next();
    if (!(j.rule == Rule::Premise && ts.at(Tok::RParen))) read_args(ts, j);
    ts.expect(Tok::RParen, "')'");
  } else if (j.rule != Rule::Premise) {
    ts.fail("rule " + name.text + " needs arguments");
  }
  return j;
}

}  // namespace

Judgment parse_judgment(std::string_view text) {
  TokenStream ts(parse::lex(text));
  Judgment j = ts.judgment();
  if (!ts.at_end()) ts.fail("unexpected '" + ts.peek().text + "'");
  return j;
}

DerivationScript parse_script(std::string_view text) {
  DerivationScript script;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++line_no;
    start = end + 1;

    TokenStream ts(parse::lex(line, line_no));
    if (ts.at_end()) {
      if (end == text.size()) break;
      continue;
    }
    if (ts.at_word("def") && ts.at(Tok::UpperIdent, 1)) {
      ts.next();
      const auto& name = ts.next();
      ts.expect(Tok::Assign, "':='");
      Formula definiens = ts.formula();
      if (!ts.at_end()) ts.fail("unexpected '" + ts.peek().text + "'");
      try {
        script.env.define(name.text, definiens);
      } catch (const FormulaError& e) {
        ts.fail_at(name, e.what());
      }
    } else if (ts.at_word("premise") && !ts.at(Tok::Colon, 1)) {
      ts.next();
      script.premises.push_back(ts.judgment());
      if (!ts.at_end()) ts.fail("unexpected '" + ts.peek().text + "'");
    } else {
      StepId id = step_id(ts);
      ts.expect(Tok::Colon, "':'");
      Judgment judgment = ts.judgment();
      ts.expect_word("by");
      Justification just = read_justification(ts);
      if (!ts.at_end()) ts.fail("unexpected '" + ts.peek().text + "' after justification");
      script.steps.push_back(Step{std::move(id), std::move(judgment), std::move(just)});
    }
    if (end == text.size()) break;
  }
  return script;
}

std::string render_justification(const Justification& j) {
  std::vector<std::string> args;
  switch (j.rule) {
    case Rule::Axiom:
      if (j.schema) args.emplace_back(to_string(*j.schema));
      if (j.formula) args.push_back(render_formula(*j.formula));
      break;
    case Rule::Premise:
      if (j.premise_index) args.push_back(std::to_string(*j.premise_index));
      break;
    case Rule::Def:
      args.push_back(j.name);
      break;
    case Rule::TSchema:
      if (j.formula) args.push_back(render_formula(*j.formula));
      if (!j.name.empty()) args.push_back(j.name);
      break;
    case Rule::Abstraction:
      args.push_back(j.name);
      if (j.formula) args.push_back(render_formula(*j.formula));
      break;
    case Rule::USpec:
      for (const auto& p : j.premises) args.push_back(p.str());
      if (!j.name.empty()) args.push_back(j.name);
      if (j.term) args.push_back(render_term(*j.term));
      break;
    case Rule::TEnthymeme:
      for (const auto& p : j.premises) args.push_back(p.str());
      if (j.formula) args.push_back(render_formula(*j.formula));
      if (j.option != RuleOption::None) args.emplace_back(to_string(j.option));
      if (!j.name.empty()) args.push_back(j.name);
      break;
    default:
      for (const auto& p : j.premises) args.push_back(p.str());
      if (j.option != RuleOption::None) args.emplace_back(to_string(j.option));
      break;
  }
  std::string out(to_string(j.rule));
  if (args.empty() && takes_no_args(j)) return out;
  out += '(';
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) out += ", ";
    out += args[i];
  }
  return out + ')';
}

std::string render_script_judgment(const Judgment& j) {
  if (j.antecedent) return render_formula(*j.antecedent) + " |- " + render_formula(j.succedent);
  return render_formula(j.succedent);
}

std::string render_script(const DerivationScript& script) {
  std::string out;
  for (const auto& [name, definiens] : script.env.entries())
    out += "def " + name + " := " + render_formula(definiens) + "\n";
  for (const auto& p : script.premises) out += "premise " + render_script_judgment(p) + "\n";
  for (const auto& s : script.steps)
    out += s.id.str() + ": " + render_script_judgment(s.judgment) + " by " + render_justification(s.justification) + "\n";
  return out;
}

std::string render_report(const CheckReport& report, Format format) {
  if (format == Format::Json) {
    nlohmann::ordered_json doc;
    doc["mode"] = std::string(to_string(report.mode));
    doc["blocked"] = report.mode == Mode::Restricted ? nlohmann::ordered_json(report.blocked) : nlohmann::ordered_json();
    auto steps = nlohmann::ordered_json::array();
    for (const auto& s : report.steps) {
      nlohmann::ordered_json rec;
      rec["id"] = s.id.str();
      rec["rule"] = std::string(to_string(s.rule));
      rec["status"] = std::string(to_string(s.status));
      rec["reason"] = s.reason;
      if (!s.detail.empty()) rec["detail"] = s.detail;
      steps.push_back(std::move(rec));
    }
    doc["steps"] = std::move(steps);
    doc["blocked_at"] = report.blocked_at ? nlohmann::ordered_json(report.blocked_at->str()) : nlohmann::ordered_json();
    doc["conclusion"] =
        report.conclusion ? nlohmann::ordered_json(render_script_judgment(*report.conclusion)) : nlohmann::ordered_json();
    return doc.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "mode: " << to_string(report.mode);
  if (report.mode == Mode::Restricted) os << " (V = " << report.blocked << ")";
  os << "\n";
  for (const auto& s : report.steps) {
    os << "  step " << s.id.str() << " " << to_string(s.rule) << ": " << to_string(s.status);
    if (!s.reason.empty()) os << " (" << s.reason << ")";
    if (!s.detail.empty()) os << " - " << s.detail;
    os << "\n";
  }
  os << "blocked_at: " << (report.blocked_at ? report.blocked_at->str() : "none") << "\n";
  os << "conclusion: " << (report.conclusion ? render_judgment(*report.conclusion) : "none") << "\n";
  return os.str();
}

}  // namespace lpcheck
