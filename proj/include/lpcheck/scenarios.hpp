#pragma once

// The set-theoretic and truth-theoretic Curry derivations as proof scripts.
// Steps 1..6 carry the six canonical judgments; lettered steps are the
// auxiliary biconditional splits and definition steps they rely on.

#include <optional>

#include "lpcheck/blocked.hpp"
#include "lpcheck/kernel.hpp"

namespace lpcheck {

enum class CurryVariant { Truth, Set };

struct ScenarioConfig {
  CurryVariant variant = CurryVariant::Set;
  Formula falsum = Formula::atom("f");
  Mode mode = Mode::Unrestricted;
  BlockedSetSpec blocked;
};

/// C[F] = {x | x in x -> F}:
///   1  |- x in C[F] <-> (x in x -> F)        ABSTRACTION
///   2  |- C[F] in C[F] <-> (C[F] in C[F] -> F) USPEC from 1
///   3  |- C[F] in C[F] -> (C[F] in C[F] -> F)  SIMP_L from 2
///   4  |- C[F] in C[F] -> F                    CONTRACTION from 3
///   5a |- (C[F] in C[F] -> F) -> C[F] in C[F]  SIMP_R from 2
///   5  |- C[F] in C[F]                         MP from 4, 5a
///   6  |- F                                    MP from 5, 4
DerivationScript curry_set_script(const Formula& falsum);

/// With C := T[C] -> F:
///   1a |- C <-> (T[C] -> F)        DEF
///   1b |- T[C] <-> C               TSCHEMA
///   1  |- C <-> (C -> F)           SUBST_EQ from 1b, 1a
///   2  |- C & (C -> F) -> F        AXIOM(ASSERTION)
///   3  |- C & C -> F               SUBST_EQ from 1, 2 (right to left)
///   4  |- C -> F                   IDEM from 3
///   5a |- (C -> F) -> C            SIMP_R from 1
///   5  |- C                        MP from 4, 5a
///   6  |- F                        MP from 5, 4
DerivationScript curry_truth_script(const Formula& falsum, const std::string& constant = "C");

DerivationScript scenario_script(const ScenarioConfig& cfg);
CheckReport run_scenario(const ScenarioConfig& cfg);

/// The blocked set that the restricted replay of `variant` uses by default.
BlockedSetSpec default_blocked_for(CurryVariant variant);

}  // namespace lpcheck
