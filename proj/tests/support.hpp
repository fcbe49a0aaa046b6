#pragma once

// Seeded generators and reference oracles shared by the test binaries. The
// oracles are written against the data model only; they do not call the
// library's own matchers, printers or substitution code.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "lpcheck/formula.hpp"
#include "lpcheck/kernel.hpp"
#include "lpcheck/syntax.hpp"

namespace lpcheck::testing {

using K = Formula::Kind;
using TK = Term::Kind;

struct GenOptions {
  std::vector<std::string> atoms{"p", "q", "r", "f"};
  std::vector<std::string> constants{"C", "D"};
  std::vector<std::string> predicates{"T", "U"};
  std::vector<std::string> binders{"x", "y", "z"};
  std::vector<std::string> free_vars{"x", "u"};
  bool terms = true;        // membership, truth, set abstraction, quotation
  bool negation = true;
  bool disjunction = true;
};

inline GenOptions propositional(std::vector<std::string> atoms) {
  GenOptions o;
  o.atoms = std::move(atoms);
  o.constants.clear();
  o.terms = false;
  return o;
}

class Gen {
 public:
  explicit Gen(std::uint64_t seed, GenOptions opts = {}) : rng_(seed), opts_(std::move(opts)) {}

  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }
  std::mt19937_64& rng() { return rng_; }
  const GenOptions& options() const { return opts_; }

  template <class T>
  const T& pick(const std::vector<T>& xs) {
    return xs[below(xs.size())];
  }

  /// A formula with size() <= budget (budget >= 1).
  Formula formula(std::size_t budget) {
    std::vector<std::string> scope;
    return formula(budget, scope, true);
  }

  Formula closed_formula(std::size_t budget) {
    std::vector<std::string> scope;
    return formula(budget, scope, false);
  }

  Term term(std::size_t budget) {
    std::vector<std::string> scope;
    return term(budget, scope, true);
  }

 private:
  Formula leaf() {
    if (!opts_.constants.empty() && coin(0.15)) return Formula::named(pick(opts_.constants));
    return Formula::atom(pick(opts_.atoms));
  }

  Formula formula(std::size_t budget, std::vector<std::string>& scope, bool open) {
    if (budget <= 1 || coin(0.12)) return leaf();
    std::vector<int> choices;
    if (budget >= 3) choices.push_back(0);  // binary connective
    if (opts_.negation) choices.push_back(1);
    if (opts_.terms && (budget >= 3 || !opts_.constants.empty())) choices.push_back(2);  // truth
    if (opts_.terms && budget >= 3) choices.push_back(3);                                  // member
    if (choices.empty()) return leaf();
    switch (pick(choices)) {
      case 0: {
        std::size_t l = 1 + below(budget - 2);
        Formula a = formula(l, scope, open);
        Formula b = formula(budget - 1 - l, scope, open);
        if (opts_.disjunction && coin(0.25)) return Formula::disj(a, b);
        return coin() ? Formula::conj(a, b) : Formula::imp(a, b);
      }
      case 1:
        return Formula::negate(formula(budget - 1, scope, open));
      case 2: {
        const std::string& pred = pick(opts_.predicates);
        if (!opts_.constants.empty() && (budget < 3 || coin(0.3)))
          return Formula::truth(Term::constant(pick(opts_.constants)), pred);
        std::vector<std::string> inner;
        return Formula::truth(Term::quote(formula(budget - 2, inner, false)), pred);
      }
      default: {
        std::size_t l = 1 + below(budget - 2);
        Term a = term(l, scope, open);
        Term b = term(budget - 1 - l, scope, open);
        return Formula::member(a, b);
      }
    }
  }

  Term term(std::size_t budget, std::vector<std::string>& scope, bool open) {
    std::vector<int> choices;
    if (!scope.empty() || open) choices.push_back(0);   // variable
    if (!opts_.constants.empty()) choices.push_back(1);  // constant
    if (budget >= 2) {
      choices.push_back(2);  // abstraction
      choices.push_back(3);  // quotation
    }
    if (choices.empty()) {
      // closed, no constants, no room: smallest closed term
      return Term::quote(Formula::atom(pick(opts_.atoms)));
    }
    switch (pick(choices)) {
      case 0: {
        if (!scope.empty() && (!open || coin(0.7))) return Term::var(pick(scope));
        return Term::var(pick(opts_.free_vars));
      }
      case 1:
        return Term::constant(pick(opts_.constants));
      case 2: {
        const std::string& x = pick(opts_.binders);
        scope.push_back(x);
        Formula body = formula(budget - 1, scope, open);
        scope.pop_back();
        return Term::set_abs(x, body);
      }
      default: {
        std::vector<std::string> inner;
        if (budget < 2) return Term::quote(Formula::atom(pick(opts_.atoms)));
        return Term::quote(formula(budget - 1, inner, false));
      }
    }
  }

  std::mt19937_64 rng_;
  GenOptions opts_;
};

// ---------------------------------------------------------------------------
// Reference oracles

inline void oracle_free_vars(const Formula& f, std::set<std::string> bound, std::set<std::string>& out);

inline void oracle_free_vars(const Term& t, std::set<std::string> bound, std::set<std::string>& out) {
  switch (t.kind()) {
    case TK::Var:
      if (!bound.count(t.name())) out.insert(t.name());
      return;
    case TK::Const:
      return;
    case TK::SetAbs:
      bound.insert(t.name());
      oracle_free_vars(t.body(), bound, out);
      return;
    case TK::Quote:
      oracle_free_vars(t.body(), bound, out);
      return;
  }
}

inline void oracle_free_vars(const Formula& f, std::set<std::string> bound, std::set<std::string>& out) {
  switch (f.kind()) {
    case K::Atom:
    case K::Named:
      return;
    case K::Truth:
      oracle_free_vars(f.term(), bound, out);
      return;
    case K::Member:
      oracle_free_vars(f.term(), bound, out);
      oracle_free_vars(f.rhs_term(), bound, out);
      return;
    case K::Not:
      oracle_free_vars(f.left(), bound, out);
      return;
    default:
      oracle_free_vars(f.left(), bound, out);
      oracle_free_vars(f.right(), bound, out);
      return;
  }
}

inline std::set<std::string> oracle_free_vars(const Formula& f) {
  std::set<std::string> out;
  oracle_free_vars(f, {}, out);
  return out;
}

inline void oracle_atoms(const Formula& f, std::set<std::string>& out);

inline void oracle_atoms(const Term& t, std::set<std::string>& out) {
  if (t.kind() == TK::SetAbs || t.kind() == TK::Quote) oracle_atoms(t.body(), out);
}

inline void oracle_atoms(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case K::Atom:
      out.insert(f.name());
      return;
    case K::Named:
      return;
    case K::Truth:
      oracle_atoms(f.term(), out);
      return;
    case K::Member:
      oracle_atoms(f.term(), out);
      oracle_atoms(f.rhs_term(), out);
      return;
    case K::Not:
      oracle_atoms(f.left(), out);
      return;
    default:
      oracle_atoms(f.left(), out);
      oracle_atoms(f.right(), out);
      return;
  }
}

inline std::set<std::string> oracle_atoms(const Formula& f) {
  std::set<std::string> out;
  oracle_atoms(f, out);
  return out;
}

/// Renames every binder to a fresh name (b0, b1, ...) consistently.
inline Formula rename_binders(const Formula& f, std::map<std::string, std::string> env, int& counter);

inline Term rename_binders(const Term& t, std::map<std::string, std::string> env, int& counter) {
  switch (t.kind()) {
    case TK::Var: {
      auto it = env.find(t.name());
      return it == env.end() ? t : Term::var(it->second);
    }
    case TK::Const:
      return t;
    case TK::SetAbs: {
      std::string fresh = "b" + std::to_string(counter++);
      env[t.name()] = fresh;
      return Term::set_abs(fresh, rename_binders(t.body(), env, counter));
    }
    case TK::Quote:
      return Term::quote(rename_binders(t.body(), env, counter));
  }
  return t;
}

inline Formula rename_binders(const Formula& f, std::map<std::string, std::string> env, int& counter) {
  switch (f.kind()) {
    case K::Atom:
    case K::Named:
      return f;
    case K::Truth:
      return Formula::truth(rename_binders(f.term(), env, counter), f.name());
    case K::Member:
      return Formula::member(rename_binders(f.term(), env, counter), rename_binders(f.rhs_term(), env, counter));
    case K::Not:
      return Formula::negate(rename_binders(f.left(), env, counter));
    case K::And:
      return Formula::conj(rename_binders(f.left(), env, counter), rename_binders(f.right(), env, counter));
    case K::Or:
      return Formula::disj(rename_binders(f.left(), env, counter), rename_binders(f.right(), env, counter));
    case K::Imp:
      return Formula::imp(rename_binders(f.left(), env, counter), rename_binders(f.right(), env, counter));
  }
  return f;
}

inline Formula rename_binders(const Formula& f) {
  int counter = 0;
  return rename_binders(f, {}, counter);
}

/// Every subformula, with duplicates, connective positions only.
inline void connective_subformulas(const Formula& f, std::vector<Formula>& out) {
  out.push_back(f);
  if (f.is(K::Not)) connective_subformulas(f.left(), out);
  if (f.is(K::And) || f.is(K::Or) || f.is(K::Imp)) {
    connective_subformulas(f.left(), out);
    connective_subformulas(f.right(), out);
  }
}

/// Replaces the n-th (pre-order, connective positions) subformula by `with`.
inline Formula replace_nth(const Formula& f, std::size_t& n, const Formula& with) {
  if (n == 0) {
    n = static_cast<std::size_t>(-1);
    return with;
  }
  --n;
  switch (f.kind()) {
    case K::Not:
      return Formula::negate(replace_nth(f.left(), n, with));
    case K::And: {
      Formula l = replace_nth(f.left(), n, with);
      return Formula::conj(l, replace_nth(f.right(), n, with));
    }
    case K::Or: {
      Formula l = replace_nth(f.left(), n, with);
      return Formula::disj(l, replace_nth(f.right(), n, with));
    }
    case K::Imp: {
      Formula l = replace_nth(f.left(), n, with);
      return Formula::imp(l, replace_nth(f.right(), n, with));
    }
    default:
      return f;
  }
}

/// Axiom patterns, written out independently of the library's table.
struct PatternDef {
  const char* id;
  const char* text;
};

inline const std::vector<PatternDef>& reference_patterns() {
  static const std::vector<PatternDef> defs{
      {"AX1", "A -> (B -> A)"},
      {"AX2", "(A -> B) -> ((A -> (B -> C)) -> (A -> C))"},
      {"AX3", "A -> (B -> (A & B))"},
      {"AX4", "(A & B) -> A"},
      {"AX5", "(A & B) -> B"},
      {"AX6", "A -> (A | B)"},
      {"AX7", "B -> (A | B)"},
      {"AX8", "(A -> C) -> ((B -> C) -> ((A | B) -> C))"},
      {"AX9", "A | ~A"},
      {"AX10", "B -> (~B -> A)"},
      {"ASSERTION", "(A & (A -> B)) -> B"},
  };
  return defs;
}

/// Homomorphic replacement of Named A/B/C leaves.
inline Formula plug(const Formula& pattern, const std::map<char, Formula>& sigma) {
  switch (pattern.kind()) {
    case K::Named:
      return sigma.at(pattern.name()[0]);
    case K::Not:
      return Formula::negate(plug(pattern.left(), sigma));
    case K::And:
      return Formula::conj(plug(pattern.left(), sigma), plug(pattern.right(), sigma));
    case K::Or:
      return Formula::disj(plug(pattern.left(), sigma), plug(pattern.right(), sigma));
    case K::Imp:
      return Formula::imp(plug(pattern.left(), sigma), plug(pattern.right(), sigma));
    default:
      return pattern;
  }
}

inline std::vector<char> pattern_metas(const Formula& pattern) {
  std::vector<char> out;
  std::vector<Formula> subs;
  connective_subformulas(pattern, subs);
  for (const auto& s : subs)
    if (s.is(K::Named) && std::find(out.begin(), out.end(), s.name()[0]) == out.end()) out.push_back(s.name()[0]);
  std::sort(out.begin(), out.end());
  return out;
}

/// Size of plug(pattern, sigma) without building it.
inline std::size_t plugged_size(const Formula& pattern, const std::map<char, Formula>& sigma) {
  switch (pattern.kind()) {
    case K::Named:
      return sigma.at(pattern.name()[0]).size();
    case K::Not:
      return 1 + plugged_size(pattern.left(), sigma);
    case K::And:
    case K::Or:
    case K::Imp:
      return 1 + plugged_size(pattern.left(), sigma) + plugged_size(pattern.right(), sigma);
    default:
      return pattern.size();
  }
}

/// All assignments over subformulas of `f` that plug `pattern` into `f`.
inline std::vector<std::map<char, Formula>> brute_force_matches(const Formula& pattern, const Formula& f) {
  std::vector<Formula> subs;
  connective_subformulas(f, subs);
  std::vector<Formula> uniq;
  for (const auto& s : subs)
    if (std::none_of(uniq.begin(), uniq.end(), [&](const Formula& u) { return structurally_equal(u, s); }))
      uniq.push_back(s);
  auto metas = pattern_metas(pattern);
  std::vector<std::map<char, Formula>> found;
  std::vector<std::size_t> pick(metas.size(), 0);
  while (true) {
    std::map<char, Formula> sigma;
    for (std::size_t i = 0; i < metas.size(); ++i) sigma.emplace(metas[i], uniq[pick[i]]);
    if (plugged_size(pattern, sigma) == f.size() && structurally_equal(plug(pattern, sigma), f)) found.push_back(sigma);
    std::size_t i = metas.size();
    while (i > 0 && ++pick[i - 1] == uniq.size()) pick[--i] = 0;
    if (i == 0) break;
  }
  return found;
}

/// Every propositional formula of exactly `size` nodes over `atoms` with
/// connectives ~ & | ->.
inline std::vector<std::vector<Formula>> enumerate_by_size(const std::vector<std::string>& atoms, std::size_t max) {
  std::vector<std::vector<Formula>> by(max + 1);
  for (const auto& a : atoms) by[1].push_back(Formula::atom(a));
  for (std::size_t n = 2; n <= max; ++n) {
    for (const auto& g : by[n - 1]) by[n].push_back(Formula::negate(g));
    for (std::size_t l = 1; l + 1 < n; ++l) {
      std::size_t r = n - 1 - l;
      for (const auto& a : by[l])
        for (const auto& b : by[r]) {
          by[n].push_back(Formula::conj(a, b));
          by[n].push_back(Formula::disj(a, b));
          by[n].push_back(Formula::imp(a, b));
        }
    }
  }
  return by;
}

inline Formula F(const char* text) { return parse_formula(text); }

}  // namespace lpcheck::testing
