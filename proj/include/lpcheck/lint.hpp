#pragma once

// Relevance lint for formula lists.
//
// A formula is a violation when its top-level implication shares no atom
// between antecedent and consequent, or when it instantiates one of the
// classic paradoxes of strict implication
//
//   (A & ~A) -> B      ~A -> (A -> B)      A -> (B -> B)
//
// with A and B atom-disjoint. Findings also carry the axiom schemata the
// formula instantiates, an advisory for AX10 instances, and markers for
// paradox generators (self-membership abstractions, truth fixed points).

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lpcheck/formula.hpp"
#include "lpcheck/schema.hpp"
#include "lpcheck/script.hpp"

namespace lpcheck {

enum class ParadoxPattern { ExFalso, NegatedAntecedent, IrrelevantTautology };

std::string_view to_string(ParadoxPattern p);
/// Pattern text with metavariables, e.g. "~A -> (A -> B)".
std::string_view pattern_text(ParadoxPattern p);

/// The paradox pattern `f` instantiates with atom-disjoint A and B, if any.
std::optional<ParadoxPattern> match_paradox(const Formula& f);

/// {x | ...x in x...} anywhere in `f`.
bool has_self_membership_abstraction(const Formula& f);

/// Constants of `env` whose definiens applies a truth predicate to the
/// constant itself.
std::vector<std::string> truth_fixed_points(const DefEnv& env);

struct LintFinding {
  std::size_t line = 0;
  std::string text;          // rendered formula, or "def C := ..."
  bool definition = false;
  SharingVerdict sharing = SharingVerdict::NotAnImplication;
  std::optional<ParadoxPattern> paradox;
  bool violation = false;
  std::vector<SchemaId> schemas;
  std::vector<std::string> flags;  // "AX10-advisory", "self-membership-abstraction", "truth-fixed-point:C"
};

struct LintReport {
  std::vector<LintFinding> findings;
  std::size_t violations = 0;
};

LintFinding lint_formula(const Formula& f, const DefEnv& env = {});

/// One formula per line; `def NAME := formula` lines declare constants and are
/// reported only for their flags. Throws SyntaxError.
LintReport lint_text(std::string_view text);

std::string render_lint(const LintReport& report, Format format);

}  // namespace lpcheck
