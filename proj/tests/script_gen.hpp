#pragma once

// Random derivation scripts that are valid by construction. Every judgment is
// built here from formula constructors, not by asking the kernel, so the
// checker can be tested against it.

#include <optional>
#include <string>
#include <vector>

#include "lpcheck/kernel.hpp"
#include "lpcheck/schema.hpp"
#include "support.hpp"

namespace lpcheck::testing {

inline Term curry_abs(const Formula& falsum) {
  Term x = Term::var("x");
  return Term::set_abs("x", Formula::imp(Formula::member(x, x), falsum));
}

inline Formula curry_member(const Formula& falsum) {
  Term t = curry_abs(falsum);
  return Formula::member(t, t);
}

struct ScriptGenOptions {
  std::size_t steps = 20;
  std::size_t max_size = 60;
  double curry_premises = 0.5;  // chance of declaring each Curry-shaped pair
};

class ScriptGen {
 public:
  explicit ScriptGen(std::uint64_t seed, ScriptGenOptions opts = {})
      : gen_(seed, basic_options()), ctx_gen_(seed ^ 0x9e3779b97f4a7c15ull, propositional({"p", "q", "r"})),
        opts_(opts) {}

  DerivationScript next() {
    script_ = DerivationScript{};
    script_.env.define("C", Formula::imp(Formula::truth(Term::constant("C")), Formula::atom("f")));
    contexts_.clear();
    declare_premises();
    for (std::size_t k = 0; k < script_.premises.size(); ++k)
      if (gen_.coin(0.8)) add_premise_step(k);
    std::size_t target = script_.steps.size() + opts_.steps;
    std::size_t attempts = 0;
    while (script_.steps.size() < target && attempts++ < 50 * opts_.steps) derive_one();
    return script_;
  }

 private:
  static GenOptions basic_options() {
    GenOptions o;
    o.atoms = {"p", "q", "r", "f"};
    o.constants = {"C"};
    return o;
  }

  struct Context {
    Formula shape;  // contains the placeholder Named("A")
    std::size_t premise;
    std::optional<std::size_t> step;  // latest script step holding the instance
    bool folded = true;               // placeholder holds C, or its definiens
  };

  Formula basic() { return gen_.closed_formula(1 + gen_.below(6)); }

  Formula context_shape() {
    Formula f = ctx_gen_.formula(2 + ctx_gen_.below(6));
    std::vector<Formula> subs;
    connective_subformulas(f, subs);
    std::size_t n = ctx_gen_.below(subs.size());
    return replace_nth(f, n, Formula::named("A"));
  }

  void declare(Judgment j) { script_.premises.push_back(std::move(j)); }

  void declare_premises() {
    auto& P = script_.premises;
    P.clear();
    if (gen_.coin(opts_.curry_premises)) {
      Formula F = gen_.coin(0.7) ? Formula::atom("f") : basic();
      declare(Judgment::theorem(curry_member(F)));
      declare(Judgment::theorem(Formula::imp(curry_member(F), F)));
    }
    if (gen_.coin(opts_.curry_premises)) {
      declare(Judgment::theorem(Formula::named("C")));
      declare(Judgment::theorem(Formula::imp(Formula::named("C"), Formula::atom("f"))));
    }
    for (int i = 0; i < 3; ++i) {
      Formula a = basic();
      Formula b = basic();
      Formula c = basic();
      if (gen_.coin()) declare(Judgment::theorem(a));
      if (gen_.coin()) declare(Judgment::theorem(Formula::imp(a, b)));
      if (gen_.coin(0.3)) declare(Judgment::theorem(Formula::imp(a, Formula::imp(a, b))));
      if (gen_.coin(0.3)) declare(Judgment::theorem(Formula::imp(Formula::conj(a, a), b)));
      if (gen_.coin(0.3)) declare(Judgment::theorem(Formula::conj(a, b)));
      if (gen_.coin(0.3)) declare(Judgment::theorem(Formula::negate(b)));
      if (gen_.coin(0.3)) declare(Judgment::consequence(Formula::conj(a, b), c));
      if (gen_.coin(0.3)) declare(Judgment::consequence(a, b));
      if (gen_.coin(0.3)) declare(Judgment::consequence(b, c));
      if (gen_.coin(0.3)) declare(Judgment::consequence(a, Formula::imp(b, c)));
      if (gen_.coin(0.3)) declare(Judgment::consequence(a, Formula::conj(b, c)));
    }
    if (gen_.coin()) {
      Formula shape = context_shape();
      contexts_.push_back(Context{shape, script_.premises.size(), std::nullopt, true});
      declare(Judgment::theorem(plug(shape, {{'A', Formula::named("C")}})));
    }
  }

  StepId fresh_id() {
    std::uint32_t n = script_.steps.empty() ? 1 : script_.steps.back().id.number + 1;
    if (gen_.coin(0.15)) return StepId{n, "a"};
    return StepId{n, ""};
  }

  // After an auxiliary id like 4a, the next plain id reuses number 4.
  StepId next_id() {
    if (!script_.steps.empty() && script_.steps.back().id.auxiliary())
      return StepId{script_.steps.back().id.number, ""};
    return fresh_id();
  }

  std::size_t push(Judgment j, Justification just) {
    if (j.size() > opts_.max_size) return npos;
    script_.steps.push_back(Step{next_id(), std::move(j), std::move(just)});
    return script_.steps.size() - 1;
  }

  void add_premise_step(std::size_t k) {
    Justification just;
    just.rule = Rule::Premise;
    if (gen_.coin()) just.premise_index = k + 1;
    std::size_t at = push(script_.premises[k], just);
    for (auto& c : contexts_)
      if (c.premise == k && c.folded && at != npos) c.step = at;
  }

  const Judgment& judgment(std::size_t i) const { return script_.steps[i].judgment; }
  const StepId& id(std::size_t i) const { return script_.steps[i].id; }

  template <class Pred>
  std::vector<std::size_t> steps_where(Pred pred) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < script_.steps.size(); ++i)
      if (pred(judgment(i))) out.push_back(i);
    return out;
  }

  static bool cat(const Judgment& j) { return j.categorical(); }

  Justification just(Rule r, std::vector<std::size_t> premises) {
    Justification j;
    j.rule = r;
    for (std::size_t p : premises) j.premises.push_back(id(p));
    return j;
  }

  void derive_one() {
    switch (gen_.below(17)) {
      case 0:
      case 1:
        return mp();
      case 2:
        return mt();
      case 3:
        return simp();
      case 4:
        return adj();
      case 5:
        return contraction();
      case 6:
        return idem();
      case 7:
        return trans();
      case 8:
        return glb();
      case 9:
        return resid();
      case 10:
        return deresid();
      case 11:
        return enthymeme();
      case 12:
        return axiom();
      case 13:
        return def_or_tschema();
      case 14:
        return abstraction();
      case 15:
        return subst();
      default:
        return premise_again();
    }
  }

  void mp() {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < script_.steps.size(); ++i)
      for (std::size_t k = 0; k < script_.steps.size(); ++k)
        if (cat(judgment(i)) && cat(judgment(k)) && judgment(k).succedent.is(K::Imp) &&
            formulas_equal(judgment(k).succedent.left(), judgment(i).succedent))
          pairs.emplace_back(i, k);
    if (pairs.empty()) return;
    auto [minor, major] = gen_.pick(pairs);
    auto order = gen_.coin() ? std::vector<std::size_t>{minor, major} : std::vector<std::size_t>{major, minor};
    push(Judgment::theorem(judgment(major).succedent.right()), just(Rule::MP, order));
  }

  void mt() {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < script_.steps.size(); ++i)
      for (std::size_t k = 0; k < script_.steps.size(); ++k)
        if (cat(judgment(i)) && cat(judgment(k)) && judgment(i).succedent.is(K::Imp) &&
            judgment(k).succedent.is(K::Not) && formulas_equal(judgment(k).succedent.left(), judgment(i).succedent.right()))
          pairs.emplace_back(i, k);
    if (pairs.empty()) return;
    auto [imp, neg] = gen_.pick(pairs);
    push(Judgment::theorem(Formula::negate(judgment(imp).succedent.left())), just(Rule::MT, {imp, neg}));
  }

  void simp() {
    auto cs = steps_where([](const Judgment& j) { return j.categorical() && j.succedent.is(K::And); });
    if (cs.empty()) return;
    std::size_t i = gen_.pick(cs);
    bool left = gen_.coin();
    const Formula& f = judgment(i).succedent;
    push(Judgment::theorem(left ? f.left() : f.right()), just(left ? Rule::SimpL : Rule::SimpR, {i}));
  }

  void adj() {
    auto cs = steps_where(cat);
    if (cs.empty()) return;
    std::size_t a = gen_.pick(cs);
    std::size_t b = gen_.pick(cs);
    push(Judgment::theorem(Formula::conj(judgment(a).succedent, judgment(b).succedent)), just(Rule::Adj, {a, b}));
  }

  void contraction() {
    auto cs = steps_where([](const Judgment& j) {
      const Formula& f = j.succedent;
      return j.categorical() && f.is(K::Imp) && f.right().is(K::Imp) && formulas_equal(f.left(), f.right().left());
    });
    if (cs.empty()) return;
    std::size_t i = gen_.pick(cs);
    const Formula& f = judgment(i).succedent;
    push(Judgment::theorem(Formula::imp(f.left(), f.right().right())), just(Rule::Contraction, {i}));
  }

  void idem() {
    auto cs = steps_where([](const Judgment& j) {
      const Formula& f = j.succedent;
      return j.categorical() && f.is(K::Imp) && f.left().is(K::And) && formulas_equal(f.left().left(), f.left().right());
    });
    if (cs.empty()) return;
    std::size_t i = gen_.pick(cs);
    const Formula& f = judgment(i).succedent;
    push(Judgment::theorem(Formula::imp(f.left().left(), f.right())), just(Rule::Idem, {i}));
  }

  void trans() {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < script_.steps.size(); ++i)
      for (std::size_t k = 0; k < script_.steps.size(); ++k)
        if (!cat(judgment(i)) && !cat(judgment(k)) && formulas_equal(judgment(i).succedent, *judgment(k).antecedent))
          pairs.emplace_back(i, k);
    if (pairs.empty()) return;
    auto [a, b] = gen_.pick(pairs);
    push(Judgment::consequence(*judgment(a).antecedent, judgment(b).succedent), just(Rule::Trans, {a, b}));
  }

  void glb() {
    auto cs = steps_where([](const Judgment& j) { return !j.categorical(); });
    if (cs.empty()) return;
    std::size_t a = gen_.pick(cs);
    if (gen_.coin() && judgment(a).succedent.is(K::And)) {
      bool left = gen_.coin();
      Justification j = just(Rule::ConjGlb, {a});
      j.option = left ? RuleOption::Left : RuleOption::Right;
      const Formula& f = judgment(a).succedent;
      push(Judgment::consequence(*judgment(a).antecedent, left ? f.left() : f.right()), j);
      return;
    }
    std::vector<std::size_t> partners;
    for (std::size_t b : cs)
      if (formulas_equal(*judgment(a).antecedent, *judgment(b).antecedent)) partners.push_back(b);
    std::size_t b = gen_.pick(partners);
    push(Judgment::consequence(*judgment(a).antecedent, Formula::conj(judgment(a).succedent, judgment(b).succedent)),
         just(Rule::ConjGlb, {a, b}));
  }

  void resid() {
    auto cs = steps_where([](const Judgment& j) { return !j.categorical() && j.antecedent->is(K::And); });
    if (cs.empty()) return;
    std::size_t i = gen_.pick(cs);
    const Judgment& j = judgment(i);
    push(Judgment::consequence(j.antecedent->left(), Formula::imp(j.antecedent->right(), j.succedent)),
         just(Rule::Resid, {i}));
  }

  void deresid() {
    auto cs = steps_where([](const Judgment& j) { return !j.categorical() && j.succedent.is(K::Imp); });
    if (cs.empty()) return;
    std::size_t i = gen_.pick(cs);
    const Judgment& j = judgment(i);
    push(Judgment::consequence(Formula::conj(*j.antecedent, j.succedent.left()), j.succedent.right()),
         just(Rule::Deresid, {i}));
  }

  void enthymeme() {
    auto cs = steps_where(cat);
    if (cs.empty()) return;
    std::size_t i = gen_.pick(cs);
    Formula a = basic();
    Formula t = Formula::truth(Term::quote(a));
    Justification j = just(Rule::TEnthymeme, {i});
    j.formula = a;
    const Formula& bg = judgment(i).succedent;
    if (gen_.coin()) {
      j.option = RuleOption::Converse;
      push(Judgment::consequence(Formula::conj(a, bg), t), j);
    } else {
      push(Judgment::consequence(Formula::conj(t, bg), a), j);
    }
  }

  void axiom() {
    const auto& defs = reference_patterns();
    const PatternDef& d = defs[gen_.below(defs.size())];
    Formula pattern = parse_formula(d.text);
    std::map<char, Formula> sigma;
    for (char m : pattern_metas(pattern)) sigma.emplace(m, basic());
    Justification j;
    j.rule = Rule::Axiom;
    j.schema = schema_from_string(d.id);
    Formula inst = plug(pattern, sigma);
    if (gen_.coin(0.3)) j.formula = inst;
    push(Judgment::theorem(inst), j);
  }

  void def_or_tschema() {
    Justification j;
    if (gen_.coin()) {
      j.rule = Rule::Def;
      j.name = "C";
      push(Judgment::theorem(Formula::iff(Formula::named("C"), script_.env.definiens("C"))), j);
      return;
    }
    Formula a = basic();
    j.rule = Rule::TSchema;
    j.formula = a;
    push(Judgment::theorem(Formula::iff(Formula::truth(Term::quote(a)), a)), j);
  }

  // ABSTRACTION for x in x -> F, then USPEC with a closed set term.
  void abstraction() {
    Formula F = basic();
    Term x = Term::var("x");
    Formula body = Formula::imp(Formula::member(x, x), F);
    Term abs = Term::set_abs("x", body);
    Justification a;
    a.rule = Rule::Abstraction;
    a.name = "x";
    a.formula = body;
    std::size_t at = push(Judgment::theorem(Formula::iff(Formula::member(x, abs), body)), a);
    if (at == npos || gen_.coin(0.3)) return;
    Term t = gen_.coin() ? abs : curry_abs(basic());
    Justification u = just(Rule::USpec, {at});
    u.term = t;
    if (gen_.coin()) u.name = "x";
    push(Judgment::theorem(Formula::iff(Formula::member(t, abs), Formula::imp(Formula::member(t, t), F))), u);
  }

  // Rewrites a context premise between C and its definiens with a DEF step.
  void subst() {
    if (contexts_.empty()) return;
    Context& c = contexts_[gen_.below(contexts_.size())];
    if (!c.step) return;
    auto defs = steps_where([&](const Judgment& j) {
      return j.categorical() &&
             formulas_equal(j.succedent, Formula::iff(Formula::named("C"), script_.env.definiens("C")));
    });
    if (defs.empty()) return;
    Formula to = c.folded ? script_.env.definiens("C") : Formula::named("C");
    Justification j = just(Rule::SubstEq, {gen_.pick(defs), *c.step});
    if (!c.folded) j.option = RuleOption::Rtl;
    std::size_t at = push(Judgment::theorem(plug(c.shape, {{'A', to}})), j);
    if (at == npos) return;
    c.step = at;
    c.folded = !c.folded;
  }

  void premise_again() {
    if (script_.premises.empty()) return;
    add_premise_step(gen_.below(script_.premises.size()));
  }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  Gen gen_;
  Gen ctx_gen_;
  ScriptGenOptions opts_;
  DerivationScript script_;
  std::vector<Context> contexts_;
};

}  // namespace lpcheck::testing
