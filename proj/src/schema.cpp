#include "lpcheck/schema.hpp"

#include <algorithm>
#include <array>

#include "lpcheck/syntax.hpp"

namespace lpcheck {

namespace {

constexpr std::array<std::string_view, 11> kNames = {"AX1", "AX2", "AX3", "AX4",  "AX5",      "AX6",
                                                     "AX7", "AX8", "AX9", "AX10", "ASSERTION"};

bool is_meta(const Formula& p) {
  return p.is(Formula::Kind::Named) && p.name().size() == 1 && p.name()[0] >= 'A' && p.name()[0] <= 'C';
}

void collect_metas(const Formula& p, std::vector<char>& out) {
  if (is_meta(p)) {
    if (std::find(out.begin(), out.end(), p.name()[0]) == out.end()) out.push_back(p.name()[0]);
    return;
  }
  switch (p.kind()) {
    case Formula::Kind::Not:
      collect_metas(p.left(), out);
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Imp:
      collect_metas(p.left(), out);
      collect_metas(p.right(), out);
      return;
    default:
      throw FormulaError("schema patterns use connectives and metavariables only");
  }
}

bool match(const Formula& p, const Formula& f, MatchAssignment& sigma) {
  if (is_meta(p)) {
    char m = p.name()[0];
    auto it = sigma.find(m);
    if (it == sigma.end()) {
      sigma.emplace(m, f);
      return true;
    }
    return formulas_equal(it->second, f);
  }
  if (p.kind() != f.kind()) return false;
  if (p.is(Formula::Kind::Not)) return match(p.left(), f.left(), sigma);
  return match(p.left(), f.left(), sigma) && match(p.right(), f.right(), sigma);
}

Formula instantiate(const Formula& p, const MatchAssignment& sigma) {
  if (is_meta(p)) {
    auto it = sigma.find(p.name()[0]);
    if (it == sigma.end()) throw FormulaError(std::string("unbound metavariable ") + p.name());
    return it->second;
  }
  switch (p.kind()) {
    case Formula::Kind::Not:
      return Formula::negate(instantiate(p.left(), sigma));
    case Formula::Kind::And:
      return Formula::conj(instantiate(p.left(), sigma), instantiate(p.right(), sigma));
    case Formula::Kind::Or:
      return Formula::disj(instantiate(p.left(), sigma), instantiate(p.right(), sigma));
    default:
      return Formula::imp(instantiate(p.left(), sigma), instantiate(p.right(), sigma));
  }
}

}  // namespace

std::string_view to_string(SchemaId id) { return kNames[static_cast<std::size_t>(id)]; }

std::optional<SchemaId> schema_from_string(std::string_view s) {
  for (std::size_t i = 0; i < kNames.size(); ++i)
    if (kNames[i] == s) return static_cast<SchemaId>(i);
  return std::nullopt;
}

Schema::Schema(SchemaId id, Formula pattern) : id_(id), pattern_(std::move(pattern)) {
  collect_metas(pattern_, metas_);
}

const std::vector<Schema>& all_schemas() {
  static const std::vector<Schema> schemas = [] {
    std::vector<Schema> v;
    auto add = [&](SchemaId id, std::string_view text) { v.emplace_back(id, parse_formula(text)); };
    add(SchemaId::AX1, "A -> (B -> A)");
    add(SchemaId::AX2, "(A -> B) -> ((A -> (B -> C)) -> (A -> C))");
    add(SchemaId::AX3, "A -> (B -> A & B)");
    add(SchemaId::AX4, "A & B -> A");
    add(SchemaId::AX5, "A & B -> B");
    add(SchemaId::AX6, "A -> A | B");
    add(SchemaId::AX7, "B -> A | B");
    add(SchemaId::AX8, "(A -> C) -> ((B -> C) -> (A | B -> C))");
    add(SchemaId::AX9, "A | ~A");
    add(SchemaId::AX10, "B -> (~B -> A)");
    add(SchemaId::Assertion, "A & (A -> B) -> B");
    return v;
  }();
  return schemas;
}

const Schema& schema(SchemaId id) { return all_schemas()[static_cast<std::size_t>(id)]; }

std::optional<MatchAssignment> match_schema(const Schema& s, const Formula& f) {
  MatchAssignment sigma;
  if (match(s.pattern(), f, sigma)) return sigma;
  return std::nullopt;
}

Formula instantiate_schema(const Schema& s, const MatchAssignment& sigma) { return instantiate(s.pattern(), sigma); }

std::vector<SchemaId> classify_axiom(const Formula& f) {
  std::vector<SchemaId> out;
  for (const auto& s : all_schemas())
    if (match_schema(s, f)) out.push_back(s.id());
  return out;
}

std::string_view to_string(SharingVerdict v) {
  switch (v) {
    case SharingVerdict::Shared: return "shared";
    case SharingVerdict::Violation: return "violation";
    case SharingVerdict::NotAnImplication: return "not-an-implication";
  }
  return "?";
}

SharingVerdict check_variable_sharing(const Formula& f) {
  if (!f.is(Formula::Kind::Imp)) return SharingVerdict::NotAnImplication;
  auto l = atoms_of(f.left());
  auto r = atoms_of(f.right());
  for (const auto& a : l)
    if (r.count(a)) return SharingVerdict::Shared;
  return SharingVerdict::Violation;
}

}  // namespace lpcheck
