#include "lpcheck/scenarios.hpp"

namespace lpcheck {

namespace {

StepId sid(std::uint32_t n, std::string suffix = {}) { return StepId{n, std::move(suffix)}; }

Justification by(Rule rule, std::vector<StepId> premises = {}) {
  Justification j;
  j.rule = rule;
  j.premises = std::move(premises);
  return j;
}

Step step(StepId id, Formula f, Justification j) { return Step{std::move(id), Judgment::theorem(std::move(f)), std::move(j)}; }

}  // namespace

DerivationScript curry_set_script(const Formula& falsum) {
  if (!is_closed(falsum)) throw FormulaError("the Curry conclusion must be closed");
  const Term x = Term::var("x");
  const Formula self = Formula::member(x, x);
  const Formula body = Formula::imp(self, falsum);
  const Term curry = Term::set_abs("x", body);
  const Formula in_self = Formula::member(curry, curry);
  const Formula to_f = Formula::imp(in_self, falsum);

  DerivationScript s;

  Justification abstraction = by(Rule::Abstraction);
  abstraction.name = "x";
  abstraction.formula = body;
  s.steps.push_back(step(sid(1), Formula::iff(Formula::member(x, curry), body), abstraction));

  Justification uspec = by(Rule::USpec, {sid(1)});
  uspec.term = curry;
  s.steps.push_back(step(sid(2), Formula::iff(in_self, to_f), uspec));

  s.steps.push_back(step(sid(3), Formula::imp(in_self, to_f), by(Rule::SimpL, {sid(2)})));
  s.steps.push_back(step(sid(4), to_f, by(Rule::Contraction, {sid(3)})));
  s.steps.push_back(step(sid(5, "a"), Formula::imp(to_f, in_self), by(Rule::SimpR, {sid(2)})));
  s.steps.push_back(step(sid(5), in_self, by(Rule::MP, {sid(4), sid(5, "a")})));
  s.steps.push_back(step(sid(6), falsum, by(Rule::MP, {sid(5), sid(4)})));
  return s;
}

DerivationScript curry_truth_script(const Formula& falsum, const std::string& constant) {
  if (!is_closed(falsum)) throw FormulaError("the Curry conclusion must be closed");
  const Formula c = Formula::named(constant);
  const Formula t_c = Formula::truth(Term::constant(constant));
  const Formula c_to_f = Formula::imp(c, falsum);

  DerivationScript s;
  s.env.define(constant, Formula::imp(t_c, falsum));

  Justification def = by(Rule::Def);
  def.name = constant;
  s.steps.push_back(step(sid(1, "a"), Formula::iff(c, Formula::imp(t_c, falsum)), def));

  Justification tschema = by(Rule::TSchema);
  tschema.formula = c;
  s.steps.push_back(step(sid(1, "b"), Formula::iff(t_c, c), tschema));

  s.steps.push_back(step(sid(1), Formula::iff(c, c_to_f), by(Rule::SubstEq, {sid(1, "b"), sid(1, "a")})));

  Justification assertion = by(Rule::Axiom);
  assertion.schema = SchemaId::Assertion;
  s.steps.push_back(step(sid(2), Formula::imp(Formula::conj(c, c_to_f), falsum), assertion));

  Justification subst = by(Rule::SubstEq, {sid(1), sid(2)});
  subst.option = RuleOption::Rtl;
  s.steps.push_back(step(sid(3), Formula::imp(Formula::conj(c, c), falsum), subst));

  s.steps.push_back(step(sid(4), c_to_f, by(Rule::Idem, {sid(3)})));
  s.steps.push_back(step(sid(5, "a"), Formula::imp(c_to_f, c), by(Rule::SimpR, {sid(1)})));
  s.steps.push_back(step(sid(5), c, by(Rule::MP, {sid(4), sid(5, "a")})));
  s.steps.push_back(step(sid(6), falsum, by(Rule::MP, {sid(5), sid(4)})));
  return s;
}

DerivationScript scenario_script(const ScenarioConfig& cfg) {
  return cfg.variant == CurryVariant::Set ? curry_set_script(cfg.falsum) : curry_truth_script(cfg.falsum);
}

CheckReport run_scenario(const ScenarioConfig& cfg) {
  return check_script(scenario_script(cfg), cfg.mode, cfg.blocked);
}

BlockedSetSpec default_blocked_for(CurryVariant variant) {
  return variant == CurryVariant::Set ? make_curry_set(FormulaSet::everything())
                                      : make_curry_truth(FormulaSet::everything(), {"T"});
}

}  // namespace lpcheck
