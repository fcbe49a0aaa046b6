#pragma once

// Bounded forward chaining over the kernel's rule catalogue.
//
// Round r applies every enabled rule to premise tuples drawn from the judgments
// known before the round, at least one of which appeared in round r-1 (round 1
// also fires the premise-free rules over the instantiation pool). Rules are
// tried in id order and premise tuples in insertion order, so the derived set
// and every witness are deterministic. Negative answers only ever mean "not
// within these bounds".

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lpcheck/blocked.hpp"
#include "lpcheck/kernel.hpp"
#include "lpcheck/script.hpp"

namespace lpcheck {

struct SaturationConfig {
  std::vector<Judgment> seeds;
  std::vector<Rule> rules;
  /// Formulas AXIOM, TSCHEMA, ABSTRACTION, USPEC and T_ENTHYMEME draw their
  /// arguments from. Empty means the subformulas of the seeds.
  std::vector<Formula> pool;
  /// 0 means twice the largest seed size.
  std::size_t max_size = 0;
  std::size_t max_rounds = 10;
  Mode mode = Mode::Unrestricted;
  BlockedSetSpec blocked;
  DefEnv env;
};

struct DerivedJudgment {
  Judgment judgment;
  Justification justification;  // premises refer to derived indices via `parents`
  std::vector<std::size_t> parents;
  std::size_t round = 0;        // 0 for seeds
  bool seed = false;
};

struct SaturationResult {
  std::vector<DerivedJudgment> derived;  // insertion order; seeds first
  std::size_t rounds = 0;                // rounds that added something
  bool fixpoint = false;                 // a round added nothing
  std::size_t pruned = 0;                // candidates over the size bound
  std::size_t blocked_skips = 0;         // restricted MP applications refused
  bool truncated = false;                // pruned > 0 or no fixpoint reached
  std::size_t max_size = 0;              // effective bound

  std::optional<std::size_t> find(const Judgment& j) const;
};

/// Effective size bound and pool for `cfg`.
std::size_t effective_max_size(const SaturationConfig& cfg);
std::vector<Formula> effective_pool(const SaturationConfig& cfg);

SaturationResult saturate(const SaturationConfig& cfg);

/// The minimal script replaying derived judgment `index`: the seeds become
/// declared premises, used through PREMISE(k); every ancestor appears once, in
/// derivation order, with ids 1, 2, ...
DerivationScript witness_script(const SaturationConfig& cfg, const SaturationResult& result, std::size_t index);

struct DerivesResult {
  bool derived = false;
  std::optional<DerivationScript> witness;
  /// Inference steps in the witness (PREMISE steps excluded); 0 for a seed.
  std::size_t inferences = 0;
  /// Round in which the goal first appeared.
  std::size_t round = 0;
  /// True when the search stopped on a bound rather than a fixpoint.
  bool bounded = false;
};

DerivesResult derives_within(const Judgment& goal, const SaturationConfig& cfg);

/// Plain key-value configuration, one entry per line, `#` comments:
///
///   mode = restricted
///   blocked = curry-set(all)
///   rules = MP, SIMP_L, SIMP_R, CONTRACTION
///   max_size = 40
///   max_rounds = 10
///   def C := T[C] -> f
///   seed = p -> q
///   seed = p |- q
///   pool = p
///   goal = q
///
/// Throws SyntaxError.
struct SaturationJob {
  SaturationConfig config;
  std::optional<Judgment> goal;
};

SaturationJob parse_saturation_config(std::string_view text);

std::string render_saturation(const SaturationJob& job, const SaturationResult& result, Format format);

}  // namespace lpcheck
