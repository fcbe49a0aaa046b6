#pragma once

// Proof kernel: judgments, the rule catalogue, per-step and whole-script
// checking under unrestricted or restricted modus ponens.

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lpcheck/blocked.hpp"
#include "lpcheck/formula.hpp"
#include "lpcheck/schema.hpp"

namespace lpcheck {

/// `|- succedent` when categorical, `antecedent |- succedent` otherwise.
struct Judgment {
  std::optional<Formula> antecedent;
  Formula succedent;

  static Judgment theorem(Formula f) { return Judgment{std::nullopt, std::move(f)}; }
  static Judgment consequence(Formula a, Formula f) { return Judgment{std::move(a), std::move(f)}; }

  bool categorical() const { return !antecedent.has_value(); }
  std::size_t size() const { return succedent.size() + (antecedent ? antecedent->size() : 0); }
};

bool judgments_equal(const Judgment& a, const Judgment& b);
std::string render_judgment(const Judgment& j);

enum class Rule {
  Axiom,
  Premise,
  Def,
  TSchema,
  Abstraction,
  USpec,
  MP,
  MT,
  SimpL,
  SimpR,
  Adj,
  Contraction,
  Idem,
  SubstEq,
  Trans,
  ConjGlb,
  Resid,
  Deresid,
  TEnthymeme,
};

std::string_view to_string(Rule r);
std::optional<Rule> rule_from_string(std::string_view s);
/// Every rule in id order.
const std::vector<Rule>& all_rules();

/// `<number><letters>`. Lettered ids are auxiliary steps; they sort before the
/// bare number they support: 1a < 1b < 1 < 2.
struct StepId {
  std::uint32_t number = 0;
  std::string suffix;

  bool auxiliary() const { return !suffix.empty(); }
  std::string str() const { return std::to_string(number) + suffix; }

  static std::optional<StepId> parse(std::string_view text);

  friend bool operator==(const StepId&, const StepId&) = default;
  friend std::strong_ordering operator<=>(const StepId& a, const StepId& b);
};

enum class RuleOption { None, Left, Right, Ltr, Rtl, Converse };

std::string_view to_string(RuleOption o);

struct Justification {
  Rule rule = Rule::Premise;
  std::vector<StepId> premises;
  std::optional<SchemaId> schema;  // AXIOM
  std::string name;                // DEF constant, USPEC/ABSTRACTION variable, TSCHEMA predicate
  std::optional<Formula> formula;  // TSCHEMA / ABSTRACTION body / T_ENTHYMEME / explicit AXIOM instance
  std::optional<Term> term;        // USPEC
  std::optional<std::size_t> premise_index;  // PREMISE, 1-based
  RuleOption option = RuleOption::None;
};

struct Step {
  StepId id;
  Judgment judgment;
  Justification justification;
};

struct DerivationScript {
  DefEnv env;
  std::vector<Judgment> premises;
  std::vector<Step> steps;
};

enum class Mode { Unrestricted, Restricted };

std::string_view to_string(Mode m);

enum class StepStatus { Ok, Rejected, Malformed };

std::string_view to_string(StepStatus s);

inline constexpr std::string_view kBlockedPremise = "blocked-premise";
inline constexpr std::string_view kMismatch = "mismatch";

struct StepResult {
  StepId id;
  Rule rule = Rule::Premise;
  StepStatus status = StepStatus::Ok;
  /// "" when ok; "blocked-premise" or "mismatch" when rejected; a message
  /// when malformed.
  std::string reason;
  /// Human-readable explanation accompanying a rejection.
  std::string detail;

  bool ok() const { return status == StepStatus::Ok; }
};

struct CheckReport {
  Mode mode = Mode::Unrestricted;
  std::string blocked;  // text form of the blocked-set spec
  std::vector<StepResult> steps;
  std::optional<StepId> blocked_at;
  std::optional<Judgment> conclusion;

  bool all_ok() const;
};

/// Rule output or the reason it cannot be applied.
struct RuleResult {
  std::optional<Judgment> judgment;
  std::string error;

  explicit operator bool() const { return judgment.has_value(); }
};

/// What a rule may consult besides its premises.
struct RuleContext {
  const DefEnv& env;
  std::span<const Judgment> declared_premises;
};

/// The judgment `rule` produces from `premises` (in the justification's
/// premise order). AXIOM yields `j.formula` when it instantiates the schema;
/// PREMISE yields declared premise number `j.premise_index`.
RuleResult rule_output(const Justification& j, std::span<const Judgment* const> premises, const RuleContext& ctx);

/// For an MP application: index (0 or 1) of the minor premise, if the two
/// premises fit A and A -> B in some order.
std::optional<std::size_t> mp_minor_index(const Judgment& p0, const Judgment& p1);

/// Previously checked steps, in script order.
struct CheckedStep {
  const Step* step;
  StepStatus status;
};

StepResult check_step(const DerivationScript& script, std::span<const CheckedStep> prior, const Step& step, Mode mode,
                      const BlockedSetSpec& blocked);

CheckReport check_script(const DerivationScript& script, Mode mode, const BlockedSetSpec& blocked);

}  // namespace lpcheck
