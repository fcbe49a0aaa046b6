#pragma once

// Object language: terms, formulas, definitional environments.
//
// Terms and formulas are immutable trees with shared structure. Copying a
// Formula or Term copies a pointer. Nodes cache their size and an
// alpha-invariant hash, so equality checks on large formulas are cheap when
// they fail.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lpcheck {

class Formula;
class Term;

namespace detail {
struct TermNode;
struct FormulaNode;
}  // namespace detail

/// Raised when a constructor invariant would be violated (open quotation,
/// Truth applied to a variable, unknown constant, variable capture ...).
class FormulaError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class Term {
 public:
  enum class Kind { Var, SetAbs, Quote, Const };

  Term() = default;

  static Term var(std::string name);
  static Term set_abs(std::string bound, Formula body);
  /// Quotation of a closed formula. `[C]` for a sentence constant C is the
  /// constant's name, so quote(Named C) yields Const C.
  static Term quote(const Formula& inner);
  static Term constant(std::string name);

  bool valid() const { return node_ != nullptr; }
  Kind kind() const;
  /// Var / Const name, or the bound variable of a SetAbs.
  const std::string& name() const;
  /// SetAbs body or quoted formula.
  const Formula& body() const;

  std::size_t size() const;
  std::size_t hash() const;

  const detail::TermNode* node() const { return node_.get(); }

 private:
  explicit Term(std::shared_ptr<const detail::TermNode> n) : node_(std::move(n)) {}
  static Term make(detail::TermNode n);
  std::shared_ptr<const detail::TermNode> node_;
};

class Formula {
 public:
  enum class Kind { Atom, Named, Truth, Member, Not, And, Or, Imp };

  Formula() = default;

  static Formula atom(std::string name);
  /// Sentence constant used in formula position (its meaning lives in a DefEnv).
  static Formula named(std::string name);
  /// predicate[arg]; arg must be a Quote or a Const.
  static Formula truth(Term arg, std::string predicate = "T");
  static Formula member(Term lhs, Term rhs);
  static Formula negate(Formula f);
  static Formula conj(Formula l, Formula r);
  static Formula disj(Formula l, Formula r);
  static Formula imp(Formula l, Formula r);
  /// Sugar: (l -> r) & (r -> l).
  static Formula iff(const Formula& l, const Formula& r);

  bool valid() const { return node_ != nullptr; }
  Kind kind() const;
  bool is(Kind k) const { return kind() == k; }

  /// Atom / Named name, or Truth predicate symbol.
  const std::string& name() const;
  /// Truth argument, or Member lhs.
  const Term& term() const;
  /// Member rhs.
  const Term& rhs_term() const;
  /// Operand of Not, left operand of a binary connective.
  const Formula& left() const;
  const Formula& right() const;

  /// Node count, terms included.
  std::size_t size() const;
  /// Invariant under renaming of bound variables.
  std::size_t hash() const;

  const detail::FormulaNode* node() const { return node_.get(); }

 private:
  explicit Formula(std::shared_ptr<const detail::FormulaNode> n) : node_(std::move(n)) {}
  static Formula make(detail::FormulaNode n);
  static Formula binary(Kind k, int tag, Formula l, Formula r);
  std::shared_ptr<const detail::FormulaNode> node_;
};

namespace detail {

struct TermNode {
  Term::Kind kind;
  std::string name;
  Formula body;
  std::size_t size;
  std::size_t hash;
};

struct FormulaNode {
  Formula::Kind kind;
  std::string name;
  Term lhs;
  Term rhs;
  Formula left;
  Formula right;
  std::size_t size;
  std::size_t hash;
};

}  // namespace detail

inline Term::Kind Term::kind() const { return node_->kind; }
inline const std::string& Term::name() const { return node_->name; }
inline const Formula& Term::body() const { return node_->body; }
inline std::size_t Term::size() const { return node_->size; }
inline std::size_t Term::hash() const { return node_->hash; }

inline Formula::Kind Formula::kind() const { return node_->kind; }
inline const std::string& Formula::name() const { return node_->name; }
inline const Term& Formula::term() const { return node_->lhs; }
inline const Term& Formula::rhs_term() const { return node_->rhs; }
inline const Formula& Formula::left() const { return node_->left; }
inline const Formula& Formula::right() const { return node_->right; }
inline std::size_t Formula::size() const { return node_->size; }
inline std::size_t Formula::hash() const { return node_->hash; }

/// Exact structural identity, bound variable names included.
bool structurally_equal(const Formula& a, const Formula& b);
bool structurally_equal(const Term& a, const Term& b);

/// Equality up to renaming of set-abstraction binders.
bool formulas_equal(const Formula& a, const Formula& b);
bool terms_equal(const Term& a, const Term& b);

/// If f is (l -> r) & (r -> l) with structurally identical halves, returns (l, r).
std::optional<std::pair<Formula, Formula>> as_iff(const Formula& f);

std::set<std::string> free_vars(const Formula& f);
std::set<std::string> free_vars(const Term& t);
bool is_closed(const Formula& f);

/// Propositional atoms of f, including atoms inside quotations and
/// set-abstraction bodies.
std::set<std::string> atoms_of(const Formula& f);

/// Sentence constants mentioned anywhere in f (Named and Const occurrences).
std::set<std::string> constants_of(const Formula& f);

/// Replaces free occurrences of Var(x) by t. Throws FormulaError if a
/// set-abstraction binder would capture a free variable of t.
Formula substitute(const Formula& f, const std::string& x, const Term& t);

/// Renames every binder to a depth-indexed name that cannot be written in
/// source text. Two formulas are alpha-equivalent iff their normal forms are
/// structurally equal.
Formula alpha_normalize(const Formula& f);

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};
struct FormulaAlphaEq {
  bool operator()(const Formula& a, const Formula& b) const { return formulas_equal(a, b); }
};

/// Ordered constant definitions. A definiens may mention its own name and
/// earlier names only, and must be closed.
class DefEnv {
 public:
  void define(const std::string& name, Formula definiens);

  bool contains(const std::string& name) const { return index_.count(name) != 0; }
  /// Throws FormulaError for unknown names.
  const Formula& definiens(const std::string& name) const;
  const std::vector<std::pair<std::string, Formula>>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

 private:
  std::vector<std::pair<std::string, Formula>> entries_;
  std::map<std::string, std::size_t> index_;
};

/// Replaces every occurrence of constant `name` by one layer of its
/// definiens: Named(name) becomes the definiens, Const(name) becomes its
/// quotation. Quotations are rewritten too. Never recursive.
Formula unfold_def(const Formula& f, const DefEnv& env, const std::string& name);

/// unfold_def for every defined constant simultaneously.
Formula unfold_all(const Formula& f, const DefEnv& env);

}  // namespace lpcheck
