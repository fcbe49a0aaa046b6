#include "lpcheck/formula.hpp"

#include <algorithm>
#include <functional>

namespace lpcheck {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t tag_hash(int tag) { return std::hash<int>{}(tag * 7919 + 17); }
std::size_t str_hash(const std::string& s) { return std::hash<std::string>{}(s); }

}  // namespace

// ---------------------------------------------------------------------------
// Construction

Term Term::make(detail::TermNode n) { return Term(std::make_shared<const detail::TermNode>(std::move(n))); }

Term Term::var(std::string name) {
  // Every variable hashes alike; that is what makes the hash alpha-invariant.
  return make({Kind::Var, std::move(name), Formula{}, 1, tag_hash(101)});
}

Term Term::set_abs(std::string bound, Formula body) {
  if (!body.valid()) throw FormulaError("set abstraction without a body");
  std::size_t h = mix(tag_hash(102), body.hash());
  std::size_t sz = 1 + body.size();
  return make({Kind::SetAbs, std::move(bound), std::move(body), sz, h});
}

Term Term::quote(const Formula& inner) {
  if (!inner.valid()) throw FormulaError("empty quotation");
  if (inner.kind() == Formula::Kind::Named) return constant(inner.name());
  if (!is_closed(inner)) {
    auto fv = free_vars(inner);
    throw FormulaError("quotation of an open formula (free variable '" + *fv.begin() + "')");
  }
  return make({Kind::Quote, std::string{}, inner, 1 + inner.size(), mix(tag_hash(103), inner.hash())});
}

Term Term::constant(std::string name) {
  std::size_t h = mix(tag_hash(104), str_hash(name));
  return make({Kind::Const, std::move(name), Formula{}, 1, h});
}

Formula Formula::make(detail::FormulaNode n) {
  return Formula(std::make_shared<const detail::FormulaNode>(std::move(n)));
}

Formula Formula::atom(std::string name) {
  std::size_t h = mix(tag_hash(1), str_hash(name));
  return make({Kind::Atom, std::move(name), {}, {}, {}, {}, 1, h});
}

Formula Formula::named(std::string name) {
  std::size_t h = mix(tag_hash(2), str_hash(name));
  return make({Kind::Named, std::move(name), {}, {}, {}, {}, 1, h});
}

Formula Formula::truth(Term arg, std::string predicate) {
  if (!arg.valid()) throw FormulaError("truth predicate without an argument");
  if (arg.kind() != Term::Kind::Quote && arg.kind() != Term::Kind::Const)
    throw FormulaError("truth predicate applies to sentence names only");
  std::size_t h = mix(mix(tag_hash(3), str_hash(predicate)), arg.hash());
  std::size_t sz = 1 + arg.size();
  return make({Kind::Truth, std::move(predicate), std::move(arg), {}, {}, {}, sz, h});
}

Formula Formula::member(Term lhs, Term rhs) {
  if (!lhs.valid() || !rhs.valid()) throw FormulaError("membership with a missing term");
  std::size_t h = mix(mix(tag_hash(4), lhs.hash()), rhs.hash());
  std::size_t sz = 1 + lhs.size() + rhs.size();
  return make({Kind::Member, {}, std::move(lhs), std::move(rhs), {}, {}, sz, h});
}

Formula Formula::negate(Formula f) {
  if (!f.valid()) throw FormulaError("negation of nothing");
  std::size_t h = mix(tag_hash(5), f.hash());
  std::size_t sz = 1 + f.size();
  return make({Kind::Not, {}, {}, {}, std::move(f), {}, sz, h});
}

Formula Formula::binary(Kind k, int tag, Formula l, Formula r) {
  if (!l.valid() || !r.valid()) throw FormulaError("connective with a missing operand");
  std::size_t h = mix(mix(tag_hash(tag), l.hash()), r.hash());
  std::size_t sz = 1 + l.size() + r.size();
  return make({k, {}, {}, {}, std::move(l), std::move(r), sz, h});
}

Formula Formula::conj(Formula l, Formula r) { return binary(Kind::And, 6, std::move(l), std::move(r)); }
Formula Formula::disj(Formula l, Formula r) { return binary(Kind::Or, 7, std::move(l), std::move(r)); }
Formula Formula::imp(Formula l, Formula r) { return binary(Kind::Imp, 8, std::move(l), std::move(r)); }
Formula Formula::iff(const Formula& l, const Formula& r) { return conj(imp(l, r), imp(r, l)); }

// ---------------------------------------------------------------------------
// Equality

bool structurally_equal(const Term& a, const Term& b) {
  if (a.node() == b.node()) return true;
  if (a.kind() != b.kind() || a.hash() != b.hash() || a.size() != b.size()) return false;
  switch (a.kind()) {
    case Term::Kind::Var:
    case Term::Kind::Const:
      return a.name() == b.name();
    case Term::Kind::SetAbs:
      return a.name() == b.name() && structurally_equal(a.body(), b.body());
    case Term::Kind::Quote:
      return structurally_equal(a.body(), b.body());
  }
  return false;
}

bool structurally_equal(const Formula& a, const Formula& b) {
  if (a.node() == b.node()) return true;
  if (a.kind() != b.kind() || a.hash() != b.hash() || a.size() != b.size()) return false;
  switch (a.kind()) {
    case Formula::Kind::Atom:
    case Formula::Kind::Named:
      return a.name() == b.name();
    case Formula::Kind::Truth:
      return a.name() == b.name() && structurally_equal(a.term(), b.term());
    case Formula::Kind::Member:
      return structurally_equal(a.term(), b.term()) && structurally_equal(a.rhs_term(), b.rhs_term());
    case Formula::Kind::Not:
      return structurally_equal(a.left(), b.left());
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Imp:
      return structurally_equal(a.left(), b.left()) && structurally_equal(a.right(), b.right());
  }
  return false;
}

namespace {

// Binder stacks for the two sides; entry i of each stack was pushed together.
struct AlphaCtx {
  std::vector<const std::string*> left;
  std::vector<const std::string*> right;
};

// Index of the innermost binder named `x`, or -1 when free.
long binder_index(const std::vector<const std::string*>& stack, const std::string& x) {
  for (long i = static_cast<long>(stack.size()) - 1; i >= 0; --i)
    if (*stack[static_cast<std::size_t>(i)] == x) return i;
  return -1;
}

bool alpha_eq(const Formula& a, const Formula& b, AlphaCtx& ctx);

bool alpha_eq(const Term& a, const Term& b, AlphaCtx& ctx) {
  if (a.kind() != b.kind() || a.hash() != b.hash() || a.size() != b.size()) return false;
  switch (a.kind()) {
    case Term::Kind::Var: {
      long ia = binder_index(ctx.left, a.name());
      long ib = binder_index(ctx.right, b.name());
      if (ia != ib) return false;
      return ia >= 0 || a.name() == b.name();
    }
    case Term::Kind::Const:
      return a.name() == b.name();
    case Term::Kind::Quote: {
      // Quotations are closed, so enclosing binders are irrelevant.
      AlphaCtx fresh;
      return alpha_eq(a.body(), b.body(), fresh);
    }
    case Term::Kind::SetAbs: {
      ctx.left.push_back(&a.name());
      ctx.right.push_back(&b.name());
      bool eq = alpha_eq(a.body(), b.body(), ctx);
      ctx.left.pop_back();
      ctx.right.pop_back();
      return eq;
    }
  }
  return false;
}

bool alpha_eq(const Formula& a, const Formula& b, AlphaCtx& ctx) {
  if (a.node() == b.node() && ctx.left.empty()) return true;
  if (a.kind() != b.kind() || a.hash() != b.hash() || a.size() != b.size()) return false;
  switch (a.kind()) {
    case Formula::Kind::Atom:
    case Formula::Kind::Named:
      return a.name() == b.name();
    case Formula::Kind::Truth:
      return a.name() == b.name() && alpha_eq(a.term(), b.term(), ctx);
    case Formula::Kind::Member:
      return alpha_eq(a.term(), b.term(), ctx) && alpha_eq(a.rhs_term(), b.rhs_term(), ctx);
    case Formula::Kind::Not:
      return alpha_eq(a.left(), b.left(), ctx);
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Imp:
      return alpha_eq(a.left(), b.left(), ctx) && alpha_eq(a.right(), b.right(), ctx);
  }
  return false;
}

}  // namespace

bool formulas_equal(const Formula& a, const Formula& b) {
  AlphaCtx ctx;
  return alpha_eq(a, b, ctx);
}

bool terms_equal(const Term& a, const Term& b) {
  AlphaCtx ctx;
  return alpha_eq(a, b, ctx);
}

std::optional<std::pair<Formula, Formula>> as_iff(const Formula& f) {
  if (!f.is(Formula::Kind::And)) return std::nullopt;
  const Formula& l = f.left();
  const Formula& r = f.right();
  if (!l.is(Formula::Kind::Imp) || !r.is(Formula::Kind::Imp)) return std::nullopt;
  if (structurally_equal(l.left(), r.right()) && structurally_equal(l.right(), r.left()))
    return std::make_pair(l.left(), l.right());
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Free variables, atoms, constants

namespace {

void collect_free(const Formula& f, std::vector<std::string>& bound, std::set<std::string>& out);

void collect_free(const Term& t, std::vector<std::string>& bound, std::set<std::string>& out) {
  switch (t.kind()) {
    case Term::Kind::Var:
      if (std::find(bound.begin(), bound.end(), t.name()) == bound.end()) out.insert(t.name());
      return;
    case Term::Kind::SetAbs:
      bound.push_back(t.name());
      collect_free(t.body(), bound, out);
      bound.pop_back();
      return;
    case Term::Kind::Quote:
    case Term::Kind::Const:
      return;
  }
}

void collect_free(const Formula& f, std::vector<std::string>& bound, std::set<std::string>& out) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
    case Formula::Kind::Named:
      return;
    case Formula::Kind::Truth:
      collect_free(f.term(), bound, out);
      return;
    case Formula::Kind::Member:
      collect_free(f.term(), bound, out);
      collect_free(f.rhs_term(), bound, out);
      return;
    case Formula::Kind::Not:
      collect_free(f.left(), bound, out);
      return;
    default:
      collect_free(f.left(), bound, out);
      collect_free(f.right(), bound, out);
      return;
  }
}

template <class Visit>
void walk(const Formula& f, Visit&& visit);

template <class Visit>
void walk(const Term& t, Visit&& visit) {
  visit(t);
  if (t.kind() == Term::Kind::SetAbs || t.kind() == Term::Kind::Quote) walk(t.body(), visit);
}

template <class Visit>
void walk(const Formula& f, Visit&& visit) {
  visit(f);
  switch (f.kind()) {
    case Formula::Kind::Atom:
    case Formula::Kind::Named:
      return;
    case Formula::Kind::Truth:
      walk(f.term(), visit);
      return;
    case Formula::Kind::Member:
      walk(f.term(), visit);
      walk(f.rhs_term(), visit);
      return;
    case Formula::Kind::Not:
      walk(f.left(), visit);
      return;
    default:
      walk(f.left(), visit);
      walk(f.right(), visit);
      return;
  }
}

}  // namespace

std::set<std::string> free_vars(const Formula& f) {
  std::vector<std::string> bound;
  std::set<std::string> out;
  collect_free(f, bound, out);
  return out;
}

std::set<std::string> free_vars(const Term& t) {
  std::vector<std::string> bound;
  std::set<std::string> out;
  collect_free(t, bound, out);
  return out;
}

bool is_closed(const Formula& f) { return free_vars(f).empty(); }

std::set<std::string> atoms_of(const Formula& f) {
  std::set<std::string> out;
  struct V {
    std::set<std::string>& out;
    void operator()(const Formula& g) const {
      if (g.is(Formula::Kind::Atom)) out.insert(g.name());
    }
    void operator()(const Term&) const {}
  };
  walk(f, V{out});
  return out;
}

std::set<std::string> constants_of(const Formula& f) {
  std::set<std::string> out;
  struct V {
    std::set<std::string>& out;
    void operator()(const Formula& g) const {
      if (g.is(Formula::Kind::Named)) out.insert(g.name());
    }
    void operator()(const Term& t) const {
      if (t.kind() == Term::Kind::Const) out.insert(t.name());
    }
  };
  walk(f, V{out});
  return out;
}

// ---------------------------------------------------------------------------
// Rewriting

namespace {

// Rebuilds f bottom-up with `term_fn` applied to terms first; unchanged
// subtrees keep their original nodes.
struct Rebuilder {
  // Returns a replacement for a term, or an invalid Term to recurse normally.
  std::function<Term(const Term&)> on_term;
  // Returns a replacement for a formula, or an invalid Formula to recurse.
  std::function<Formula(const Formula&)> on_formula;

  Term term(const Term& t) const {
    if (on_term) {
      Term r = on_term(t);
      if (r.valid()) return r;
    }
    switch (t.kind()) {
      case Term::Kind::Var:
      case Term::Kind::Const:
        return t;
      case Term::Kind::SetAbs: {
        Formula b = formula(t.body());
        return b.node() == t.body().node() ? t : Term::set_abs(t.name(), b);
      }
      case Term::Kind::Quote: {
        Formula b = formula(t.body());
        return b.node() == t.body().node() ? t : Term::quote(b);
      }
    }
    return t;
  }

  Formula formula(const Formula& f) const {
    if (on_formula) {
      Formula r = on_formula(f);
      if (r.valid()) return r;
    }
    switch (f.kind()) {
      case Formula::Kind::Atom:
      case Formula::Kind::Named:
        return f;
      case Formula::Kind::Truth: {
        Term a = term(f.term());
        return a.node() == f.term().node() ? f : Formula::truth(a, f.name());
      }
      case Formula::Kind::Member: {
        Term l = term(f.term());
        Term r = term(f.rhs_term());
        if (l.node() == f.term().node() && r.node() == f.rhs_term().node()) return f;
        return Formula::member(l, r);
      }
      case Formula::Kind::Not: {
        Formula g = formula(f.left());
        return g.node() == f.left().node() ? f : Formula::negate(g);
      }
      default: {
        Formula l = formula(f.left());
        Formula r = formula(f.right());
        if (l.node() == f.left().node() && r.node() == f.right().node()) return f;
        if (f.is(Formula::Kind::And)) return Formula::conj(l, r);
        if (f.is(Formula::Kind::Or)) return Formula::disj(l, r);
        return Formula::imp(l, r);
      }
    }
  }
};

Formula subst_formula(const Formula& f, const std::string& x, const Term& t,
                      const std::set<std::string>& t_free);

Term subst_term(const Term& u, const std::string& x, const Term& t, const std::set<std::string>& t_free) {
  switch (u.kind()) {
    case Term::Kind::Var:
      return u.name() == x ? t : u;
    case Term::Kind::Const:
    case Term::Kind::Quote:
      return u;
    case Term::Kind::SetAbs: {
      if (u.name() == x) return u;
      auto body_free = free_vars(u.body());
      if (!body_free.count(x)) return u;
      if (t_free.count(u.name()))
        throw FormulaError("substitution for '" + x + "' would be captured by binder '" + u.name() + "'");
      Formula b = subst_formula(u.body(), x, t, t_free);
      return Term::set_abs(u.name(), b);
    }
  }
  return u;
}

Formula subst_formula(const Formula& f, const std::string& x, const Term& t,
                      const std::set<std::string>& t_free) {
  Rebuilder rb;
  rb.on_term = [&](const Term& u) { return subst_term(u, x, t, t_free); };
  return rb.formula(f);
}

}  // namespace

Formula substitute(const Formula& f, const std::string& x, const Term& t) {
  return subst_formula(f, x, t, free_vars(t));
}

namespace {

Formula normalize(const Formula& f, std::map<std::string, std::string>& renaming, int depth);

Term normalize(const Term& t, std::map<std::string, std::string>& renaming, int depth) {
  switch (t.kind()) {
    case Term::Kind::Var: {
      auto it = renaming.find(t.name());
      return it == renaming.end() ? t : Term::var(it->second);
    }
    case Term::Kind::Const:
      return t;
    case Term::Kind::Quote: {
      std::map<std::string, std::string> fresh;
      return Term::quote(normalize(t.body(), fresh, 0));
    }
    case Term::Kind::SetAbs: {
      std::string fresh_name = "#" + std::to_string(depth);
      auto saved = renaming;
      renaming[t.name()] = fresh_name;
      Formula b = normalize(t.body(), renaming, depth + 1);
      renaming = std::move(saved);
      return Term::set_abs(fresh_name, b);
    }
  }
  return t;
}

Formula normalize(const Formula& f, std::map<std::string, std::string>& renaming, int depth) {
  Rebuilder rb;
  rb.on_term = [&](const Term& u) { return normalize(u, renaming, depth); };
  return rb.formula(f);
}

}  // namespace

Formula alpha_normalize(const Formula& f) {
  std::map<std::string, std::string> renaming;
  return normalize(f, renaming, 0);
}

// ---------------------------------------------------------------------------
// Definitions

void DefEnv::define(const std::string& name, Formula definiens) {
  if (name.empty() || !(name[0] >= 'A' && name[0] <= 'Z'))
    throw FormulaError("constant names start with an uppercase letter: '" + name + "'");
  if (contains(name)) throw FormulaError("constant '" + name + "' defined twice");
  if (!is_closed(definiens)) throw FormulaError("definiens of '" + name + "' is not closed");
  for (const auto& c : constants_of(definiens)) {
    if (c != name && !contains(c))
      throw FormulaError("definiens of '" + name + "' mentions undeclared constant '" + c + "'");
  }
  index_.emplace(name, entries_.size());
  entries_.emplace_back(name, std::move(definiens));
}

const Formula& DefEnv::definiens(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw FormulaError("unknown constant '" + name + "'");
  return entries_[it->second].second;
}

namespace {

Formula unfold_impl(const Formula& f, const DefEnv& env, const std::string* only) {
  auto selected = [&](const std::string& n) {
    return only ? n == *only : env.contains(n);
  };
  Rebuilder rb;
  rb.on_term = [&](const Term& t) -> Term {
    if (t.kind() == Term::Kind::Const && selected(t.name())) return Term::quote(env.definiens(t.name()));
    return Term{};
  };
  rb.on_formula = [&](const Formula& g) -> Formula {
    if (g.is(Formula::Kind::Named) && selected(g.name())) return env.definiens(g.name());
    return Formula{};
  };
  return rb.formula(f);
}

}  // namespace

Formula unfold_def(const Formula& f, const DefEnv& env, const std::string& name) {
  if (!env.contains(name)) throw FormulaError("unknown constant '" + name + "'");
  return unfold_impl(f, env, &name);
}

Formula unfold_all(const Formula& f, const DefEnv& env) { return unfold_impl(f, env, nullptr); }

}  // namespace lpcheck
