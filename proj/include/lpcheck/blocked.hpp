#pragma once

// Blocked sets V: formulas that restricted modus ponens refuses as a minor
// premise.
//
//   curry-set(Δ)      C[F] in C[F] with C[F] = {x | x in x -> F}, F in Δ
//   curry-truth(Δ; Λ) P[C] and C itself, where C := P[C] -> F, P in Λ, F in Δ
//   explicit(...)     a finite list
//   union(...)        any member blocks
//   none              nothing is blocked
//
// Membership is syntactic. Before matching, every occurrence of a definiens
// is folded back into its constant, so a formula and its one-step unfolding
// are blocked alike.

#include <string>
#include <string_view>
#include <vector>

#include "lpcheck/formula.hpp"

namespace lpcheck {

/// Δ: a finite formula set, or every formula.
struct FormulaSet {
  bool all = false;
  std::vector<Formula> items;

  static FormulaSet everything() { return FormulaSet{true, {}}; }
  static FormulaSet of(std::vector<Formula> fs) { return FormulaSet{false, std::move(fs)}; }
};

struct BlockedSetSpec {
  enum class Kind { Empty, CurrySet, CurryTruth, Explicit, Union };

  Kind kind = Kind::Empty;
  FormulaSet delta;                     // CurrySet, CurryTruth
  std::vector<std::string> lambda;      // CurryTruth: truth predicate symbols
  std::vector<Formula> formulas;        // Explicit
  std::vector<BlockedSetSpec> members;  // Union

  bool empty() const { return kind == Kind::Empty; }
};

BlockedSetSpec make_empty();
BlockedSetSpec make_curry_set(FormulaSet delta);
BlockedSetSpec make_curry_truth(FormulaSet delta, std::vector<std::string> lambda = {"T"});
BlockedSetSpec make_explicit(std::vector<Formula> formulas);
BlockedSetSpec make_union(std::vector<BlockedSetSpec> members);

bool is_blocked(const Formula& f, const BlockedSetSpec& spec, const DefEnv& env);

/// Collapses every definiens occurrence (and every quotation of one) into
/// its constant, bottom-up.
Formula fold_definitions(const Formula& f, const DefEnv& env);

/// `{x | x in x -> falsum}`
Term curry_set_term(const Formula& falsum, const std::string& var = "x");

/// Throws SyntaxError on malformed text.
BlockedSetSpec parse_blocked_spec(std::string_view text);
std::string to_string(const BlockedSetSpec& spec);

}  // namespace lpcheck
