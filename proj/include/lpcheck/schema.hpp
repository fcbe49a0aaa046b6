#pragma once

// Axiom schemata of LP#[V] plus Assertion, and the variable-sharing lint.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lpcheck/formula.hpp"

namespace lpcheck {

enum class SchemaId { AX1, AX2, AX3, AX4, AX5, AX6, AX7, AX8, AX9, AX10, Assertion };

std::string_view to_string(SchemaId id);
std::optional<SchemaId> schema_from_string(std::string_view s);

/// Metavariable ('A', 'B' or 'C') -> formula.
using MatchAssignment = std::map<char, Formula>;

/// A formula pattern whose leaves may be the metavariables A, B, C. Patterns
/// only use the connectives, so a metavariable always stands for a whole
/// formula.
class Schema {
 public:
  Schema(SchemaId id, Formula pattern);

  SchemaId id() const { return id_; }
  const Formula& pattern() const { return pattern_; }
  /// Metavariables in order of first occurrence.
  const std::vector<char>& metavariables() const { return metas_; }

 private:
  SchemaId id_;
  Formula pattern_;
  std::vector<char> metas_;
};

/// AX1..AX10 then ASSERTION, in id order.
const std::vector<Schema>& all_schemas();
const Schema& schema(SchemaId id);

/// The unique assignment that instantiates `s` to `f`, if any. Repeated
/// metavariables must bind alpha-equivalent formulas.
std::optional<MatchAssignment> match_schema(const Schema& s, const Formula& f);

/// Throws FormulaError if a metavariable of `s` is unbound.
Formula instantiate_schema(const Schema& s, const MatchAssignment& sigma);

/// Every schema `f` instantiates, in id order.
std::vector<SchemaId> classify_axiom(const Formula& f);

enum class SharingVerdict { Shared, Violation, NotAnImplication };

std::string_view to_string(SharingVerdict v);

/// For `l -> r`: Shared iff atoms_of(l) and atoms_of(r) intersect.
SharingVerdict check_variable_sharing(const Formula& f);

}  // namespace lpcheck
