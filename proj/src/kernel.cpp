#include "lpcheck/kernel.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "lpcheck/syntax.hpp"

namespace lpcheck {

using K = Formula::Kind;

// ---------------------------------------------------------------------------
// Names and ids

namespace {

struct RuleName {
  Rule rule;
  std::string_view name;
};

constexpr std::array<RuleName, 19> kRuleNames = {{
    {Rule::Axiom, "AXIOM"},
    {Rule::Premise, "PREMISE"},
    {Rule::Def, "DEF"},
    {Rule::TSchema, "TSCHEMA"},
    {Rule::Abstraction, "ABSTRACTION"},
    {Rule::USpec, "USPEC"},
    {Rule::MP, "MP"},
    {Rule::MT, "MT"},
    {Rule::SimpL, "SIMP_L"},
    {Rule::SimpR, "SIMP_R"},
    {Rule::Adj, "ADJ"},
    {Rule::Contraction, "CONTRACTION"},
    {Rule::Idem, "IDEM"},
    {Rule::SubstEq, "SUBST_EQ"},
    {Rule::Trans, "TRANS"},
    {Rule::ConjGlb, "CONJ_GLB"},
    {Rule::Resid, "RESID"},
    {Rule::Deresid, "DERESID"},
    {Rule::TEnthymeme, "T_ENTHYMEME"},
}};

}  // namespace

std::string_view to_string(Rule r) { return kRuleNames[static_cast<std::size_t>(r)].name; }

std::optional<Rule> rule_from_string(std::string_view s) {
  for (const auto& rn : kRuleNames)
    if (rn.name == s) return rn.rule;
  return std::nullopt;
}

const std::vector<Rule>& all_rules() {
  static const std::vector<Rule> rules = [] {
    std::vector<Rule> v;
    for (const auto& rn : kRuleNames) v.push_back(rn.rule);
    return v;
  }();
  return rules;
}

std::optional<StepId> StepId::parse(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
  if (i == 0 || i > 9) return std::nullopt;
  std::size_t j = i;
  while (j < text.size() && std::islower(static_cast<unsigned char>(text[j]))) ++j;
  if (j != text.size()) return std::nullopt;
  return StepId{static_cast<std::uint32_t>(std::stoul(std::string(text.substr(0, i)))), std::string(text.substr(i))};
}

std::strong_ordering operator<=>(const StepId& a, const StepId& b) {
  if (auto c = a.number <=> b.number; c != 0) return c;
  // Auxiliary (lettered) ids come before the bare number.
  if (a.auxiliary() != b.auxiliary()) return a.auxiliary() ? std::strong_ordering::less : std::strong_ordering::greater;
  return a.suffix <=> b.suffix;
}

std::string_view to_string(RuleOption o) {
  switch (o) {
    case RuleOption::None: return "";
    case RuleOption::Left: return "left";
    case RuleOption::Right: return "right";
    case RuleOption::Ltr: return "ltr";
    case RuleOption::Rtl: return "rtl";
    case RuleOption::Converse: return "converse";
  }
  return "";
}

std::string_view to_string(Mode m) { return m == Mode::Restricted ? "restricted" : "unrestricted"; }

std::string_view to_string(StepStatus s) {
  switch (s) {
    case StepStatus::Ok: return "ok";
    case StepStatus::Rejected: return "rejected";
    case StepStatus::Malformed: return "malformed";
  }
  return "?";
}

bool judgments_equal(const Judgment& a, const Judgment& b) {
  if (a.categorical() != b.categorical()) return false;
  if (a.antecedent && !formulas_equal(*a.antecedent, *b.antecedent)) return false;
  return formulas_equal(a.succedent, b.succedent);
}

std::string render_judgment(const Judgment& j) {
  if (j.antecedent) return render_formula(*j.antecedent) + " |- " + render_formula(j.succedent);
  return "|- " + render_formula(j.succedent);
}

bool CheckReport::all_ok() const {
  return std::all_of(steps.begin(), steps.end(), [](const StepResult& r) { return r.ok(); });
}

// ---------------------------------------------------------------------------
// Rule catalogue

namespace {

RuleResult fail(std::string msg) { return RuleResult{std::nullopt, std::move(msg)}; }
RuleResult yield(Judgment j) { return RuleResult{std::move(j), {}}; }
RuleResult yield(Formula f) { return yield(Judgment::theorem(std::move(f))); }

std::string show(const Formula& f) { return "'" + render_formula(f) + "'"; }

// Replaces every connective-level occurrence of `from` by `to`. Leaves
// (atoms, constants, Truth, Member) are not entered.
Formula replace_all(const Formula& f, const Formula& from, const Formula& to) {
  if (formulas_equal(f, from)) return to;
  switch (f.kind()) {
    case K::Not: {
      Formula g = replace_all(f.left(), from, to);
      return g.node() == f.left().node() ? f : Formula::negate(g);
    }
    case K::And:
    case K::Or:
    case K::Imp: {
      Formula l = replace_all(f.left(), from, to);
      Formula r = replace_all(f.right(), from, to);
      if (l.node() == f.left().node() && r.node() == f.right().node()) return f;
      if (f.is(K::And)) return Formula::conj(l, r);
      if (f.is(K::Or)) return Formula::disj(l, r);
      return Formula::imp(l, r);
    }
    default:
      return f;
  }
}

// Alpha-tolerant biconditional split.
std::optional<std::pair<Formula, Formula>> split_iff(const Formula& f) {
  if (!f.is(K::And) || !f.left().is(K::Imp) || !f.right().is(K::Imp)) return std::nullopt;
  const Formula& fwd = f.left();
  const Formula& bwd = f.right();
  if (formulas_equal(fwd.left(), bwd.right()) && formulas_equal(fwd.right(), bwd.left()))
    return std::make_pair(fwd.left(), fwd.right());
  return std::nullopt;
}

std::size_t expected_arity(const Justification& j) {
  switch (j.rule) {
    case Rule::Axiom:
    case Rule::Premise:
    case Rule::Def:
    case Rule::TSchema:
    case Rule::Abstraction:
      return 0;
    case Rule::USpec:
    case Rule::SimpL:
    case Rule::SimpR:
    case Rule::Contraction:
    case Rule::Idem:
    case Rule::Resid:
    case Rule::Deresid:
    case Rule::TEnthymeme:
      return 1;
    case Rule::ConjGlb:
      return j.option == RuleOption::Left || j.option == RuleOption::Right ? 1 : 2;
    case Rule::MP:
    case Rule::MT:
    case Rule::Adj:
    case Rule::SubstEq:
    case Rule::Trans:
      return 2;
  }
  return 0;
}

bool needs_categorical(Rule r) {
  switch (r) {
    case Rule::Trans:
    case Rule::ConjGlb:
    case Rule::Resid:
    case Rule::Deresid:
    case Rule::SubstEq:
      return false;
    default:
      return true;
  }
}

}  // namespace

std::optional<std::size_t> mp_minor_index(const Judgment& p0, const Judgment& p1) {
  if (!p0.categorical() || !p1.categorical()) return std::nullopt;
  if (p1.succedent.is(K::Imp) && formulas_equal(p1.succedent.left(), p0.succedent)) return 0;
  if (p0.succedent.is(K::Imp) && formulas_equal(p0.succedent.left(), p1.succedent)) return 1;
  return std::nullopt;
}

RuleResult rule_output(const Justification& j, std::span<const Judgment* const> premises, const RuleContext& ctx) {
  const std::string rule_name(to_string(j.rule));
  if (premises.size() != expected_arity(j))
    return fail(rule_name + " expects " + std::to_string(expected_arity(j)) + " premise(s), got " +
                std::to_string(premises.size()));
  if (needs_categorical(j.rule)) {
    for (const Judgment* p : premises)
      if (!p->categorical()) return fail(rule_name + " needs categorical premises");
  }
  auto prem = [&](std::size_t i) -> const Formula& { return premises[i]->succedent; };

  switch (j.rule) {
    case Rule::Axiom: {
      if (!j.schema) return fail("AXIOM needs a schema id");
      if (!j.formula) return fail("AXIOM needs an instance");
      if (!match_schema(schema(*j.schema), *j.formula))
        return fail(show(*j.formula) + " is not an instance of " + std::string(to_string(*j.schema)));
      return yield(*j.formula);
    }
    case Rule::Premise: {
      if (!j.premise_index) return fail("PREMISE needs a premise number");
      std::size_t k = *j.premise_index;
      if (k == 0 || k > ctx.declared_premises.size())
        return fail("no declared premise number " + std::to_string(k));
      return yield(ctx.declared_premises[k - 1]);
    }
    case Rule::Def: {
      if (!ctx.env.contains(j.name)) return fail("DEF of undefined constant '" + j.name + "'");
      return yield(Formula::iff(Formula::named(j.name), ctx.env.definiens(j.name)));
    }
    case Rule::TSchema: {
      if (!j.formula) return fail("TSCHEMA needs a formula");
      if (!is_closed(*j.formula)) return fail("TSCHEMA needs a closed formula");
      std::string pred = j.name.empty() ? "T" : j.name;
      return yield(Formula::iff(Formula::truth(Term::quote(*j.formula), pred), *j.formula));
    }
    case Rule::Abstraction: {
      if (!j.formula) return fail("ABSTRACTION needs a body");
      if (j.name.empty()) return fail("ABSTRACTION needs a variable");
      Term x = Term::var(j.name);
      return yield(Formula::iff(Formula::member(x, Term::set_abs(j.name, *j.formula)), *j.formula));
    }
    case Rule::USpec: {
      if (!j.term) return fail("USPEC needs a term");
      auto fv = free_vars(prem(0));
      std::string var = j.name;
      if (var.empty()) {
        if (fv.size() != 1)
          return fail("USPEC needs exactly one free variable in the premise, found " + std::to_string(fv.size()));
        var = *fv.begin();
      } else if (!fv.count(var)) {
        return fail("USPEC variable '" + var + "' is not free in the premise");
      }
      try {
        return yield(substitute(prem(0), var, *j.term));
      } catch (const FormulaError& e) {
        return fail(e.what());
      }
    }
    case Rule::MP: {
      auto minor = mp_minor_index(*premises[0], *premises[1]);
      if (!minor) return fail("MP needs premises A and A -> B");
      return yield(prem(1 - *minor).right());
    }
    case Rule::MT: {
      for (std::size_t i = 0; i < 2; ++i) {
        const Formula& imp = prem(i);
        const Formula& neg = prem(1 - i);
        if (imp.is(K::Imp) && neg.is(K::Not) && formulas_equal(neg.left(), imp.right()))
          return yield(Formula::negate(imp.left()));
      }
      return fail("MT needs premises A -> B and ~B");
    }
    case Rule::SimpL:
    case Rule::SimpR: {
      if (!prem(0).is(K::And)) return fail(rule_name + " needs a conjunction");
      return yield(j.rule == Rule::SimpL ? prem(0).left() : prem(0).right());
    }
    case Rule::Adj:
      return yield(Formula::conj(prem(0), prem(1)));
    case Rule::Contraction: {
      const Formula& f = prem(0);
      if (!f.is(K::Imp) || !f.right().is(K::Imp) || !formulas_equal(f.left(), f.right().left()))
        return fail("CONTRACTION needs A -> (A -> B)");
      return yield(f.right());
    }
    case Rule::Idem: {
      const Formula& f = prem(0);
      if (!f.is(K::Imp) || !f.left().is(K::And) || !formulas_equal(f.left().left(), f.left().right()))
        return fail("IDEM needs (A & A) -> B");
      return yield(Formula::imp(f.left().left(), f.right()));
    }
    case Rule::SubstEq: {
      if (!premises[0]->categorical()) return fail("SUBST_EQ needs a categorical biconditional");
      auto halves = split_iff(prem(0));
      if (!halves) return fail("SUBST_EQ needs a biconditional as its first premise");
      auto [from, to] = *halves;
      if (j.option == RuleOption::Rtl) std::swap(from, to);
      const Judgment& target = *premises[1];
      Judgment out;
      if (target.antecedent) out.antecedent = replace_all(*target.antecedent, from, to);
      out.succedent = replace_all(target.succedent, from, to);
      return yield(std::move(out));
    }
    case Rule::Trans: {
      const Judgment& a = *premises[0];
      const Judgment& b = *premises[1];
      if (a.categorical() || b.categorical()) return fail("TRANS needs two consequence judgments");
      if (!formulas_equal(a.succedent, *b.antecedent)) return fail("TRANS needs A |- B and B |- C");
      return yield(Judgment::consequence(*a.antecedent, b.succedent));
    }
    case Rule::ConjGlb: {
      for (const Judgment* p : premises)
        if (p->categorical()) return fail("CONJ_GLB needs consequence judgments");
      if (premises.size() == 2) {
        if (!formulas_equal(*premises[0]->antecedent, *premises[1]->antecedent))
          return fail("CONJ_GLB needs A |- B and A |- C");
        return yield(Judgment::consequence(*premises[0]->antecedent, Formula::conj(prem(0), prem(1))));
      }
      if (!prem(0).is(K::And)) return fail("CONJ_GLB split needs A |- B & C");
      return yield(Judgment::consequence(*premises[0]->antecedent,
                                         j.option == RuleOption::Left ? prem(0).left() : prem(0).right()));
    }
    case Rule::Resid: {
      const Judgment& p = *premises[0];
      if (p.categorical() || !p.antecedent->is(K::And)) return fail("RESID needs A & B |- C");
      return yield(Judgment::consequence(p.antecedent->left(), Formula::imp(p.antecedent->right(), p.succedent)));
    }
    case Rule::Deresid: {
      const Judgment& p = *premises[0];
      if (p.categorical() || !p.succedent.is(K::Imp)) return fail("DERESID needs A |- B -> C");
      return yield(Judgment::consequence(Formula::conj(*p.antecedent, p.succedent.left()), p.succedent.right()));
    }
    case Rule::TEnthymeme: {
      if (!j.formula) return fail("T_ENTHYMEME needs a formula");
      if (!is_closed(*j.formula)) return fail("T_ENTHYMEME needs a closed formula");
      std::string pred = j.name.empty() ? "T" : j.name;
      const Formula& background = prem(0);
      Formula truth = Formula::truth(Term::quote(*j.formula), pred);
      if (j.option == RuleOption::Converse)
        return yield(Judgment::consequence(Formula::conj(*j.formula, background), truth));
      return yield(Judgment::consequence(Formula::conj(truth, background), *j.formula));
    }
  }
  return fail("unknown rule");
}

// ---------------------------------------------------------------------------
// Checking

namespace {

StepResult malformed(StepResult r, std::string why) {
  r.status = StepStatus::Malformed;
  r.reason = std::move(why);
  return r;
}

StepResult rejected(StepResult r, std::string_view reason, std::string detail) {
  r.status = StepStatus::Rejected;
  r.reason = std::string(reason);
  r.detail = std::move(detail);
  return r;
}

std::optional<std::string> undeclared_constant(const Judgment& j, const DefEnv& env) {
  auto check = [&](const Formula& f) -> std::optional<std::string> {
    for (const auto& c : constants_of(f))
      if (!env.contains(c)) return c;
    return std::nullopt;
  };
  if (j.antecedent)
    if (auto c = check(*j.antecedent)) return c;
  return check(j.succedent);
}

}  // namespace

StepResult check_step(const DerivationScript& script, std::span<const CheckedStep> prior, const Step& step, Mode mode,
                      const BlockedSetSpec& blocked) {
  StepResult r;
  r.id = step.id;
  r.rule = step.justification.rule;
  const Justification& just = step.justification;

  if (auto c = undeclared_constant(step.judgment, script.env)) return malformed(r, "undeclared constant '" + *c + "'");

  std::vector<const Judgment*> premises;
  for (const StepId& pid : just.premises) {
    if (!(pid < step.id)) return malformed(r, "premise " + pid.str() + " does not precede step " + step.id.str());
    auto it = std::find_if(prior.begin(), prior.end(), [&](const CheckedStep& c) { return c.step->id == pid; });
    if (it == prior.end()) return malformed(r, "unknown premise step " + pid.str());
    if (it->status != StepStatus::Ok) return malformed(r, "dangling premise " + pid.str());
    premises.push_back(&it->step->judgment);
  }

  RuleContext ctx{script.env, script.premises};

  if (just.rule == Rule::Axiom && !just.formula) {
    if (!just.schema) return malformed(r, "AXIOM needs a schema id");
    if (!premises.empty()) return malformed(r, "AXIOM takes no premises");
    if (!step.judgment.categorical()) return rejected(r, kMismatch, "axioms are categorical");
    if (!match_schema(schema(*just.schema), step.judgment.succedent))
      return rejected(r, kMismatch,
                      show(step.judgment.succedent) + " is not an instance of " + std::string(to_string(*just.schema)));
    return r;
  }
  if (just.rule == Rule::Premise && !just.premise_index) {
    if (!premises.empty()) return malformed(r, "PREMISE takes no step premises");
    bool declared = std::any_of(script.premises.begin(), script.premises.end(),
                                [&](const Judgment& p) { return judgments_equal(p, step.judgment); });
    if (!declared) return rejected(r, kMismatch, render_judgment(step.judgment) + " is not a declared premise");
    return r;
  }

  RuleResult out = rule_output(just, premises, ctx);
  if (!out) return malformed(r, out.error);

  if (just.rule == Rule::MP && mode == Mode::Restricted) {
    auto minor = mp_minor_index(*premises[0], *premises[1]);
    const Formula& a = premises[*minor]->succedent;
    if (is_blocked(a, blocked, script.env))
      return rejected(r, kBlockedPremise, "minor premise " + show(a) + " is in V = " + to_string(blocked));
  }

  if (!judgments_equal(*out.judgment, step.judgment))
    return rejected(r, kMismatch, "rule yields " + render_judgment(*out.judgment));
  return r;
}

CheckReport check_script(const DerivationScript& script, Mode mode, const BlockedSetSpec& blocked) {
  CheckReport report;
  report.mode = mode;
  report.blocked = mode == Mode::Restricted ? to_string(blocked) : "";
  std::vector<CheckedStep> prior;
  prior.reserve(script.steps.size());
  const Step* last = nullptr;
  for (const Step& step : script.steps) {
    StepResult res;
    bool duplicate = std::any_of(prior.begin(), prior.end(), [&](const CheckedStep& c) { return c.step->id == step.id; });
    if (duplicate) {
      res = malformed(StepResult{step.id, step.justification.rule, StepStatus::Ok, {}, {}}, "duplicate step id " + step.id.str());
    } else if (last && !(last->id < step.id)) {
      res = malformed(StepResult{step.id, step.justification.rule, StepStatus::Ok, {}, {}}, "step id " + step.id.str() + " out of order");
    } else {
      res = check_step(script, prior, step, mode, blocked);
    }
    if (res.status == StepStatus::Rejected && res.reason == kBlockedPremise && !report.blocked_at)
      report.blocked_at = step.id;
    prior.push_back(CheckedStep{&step, res.status});
    report.steps.push_back(std::move(res));
    last = &step;
  }
  if (!script.steps.empty() && report.all_ok()) report.conclusion = script.steps.back().judgment;
  return report;
}

}  // namespace lpcheck
