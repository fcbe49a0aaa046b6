#include "lpcheck/saturator.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "lpcheck/syntax.hpp"
#include "parse_internal.hpp"

namespace lpcheck {

using K = Formula::Kind;

namespace {

std::size_t judgment_hash(const Judgment& j) {
  std::size_t h = j.succedent.hash();
  if (j.antecedent) h ^= j.antecedent->hash() * 0x9e3779b97f4a7c15ULL + 0x7f4a7c15;
  return h;
}

void collect_subformulas(const Formula& f, std::vector<Formula>& out);

void collect_term_subformulas(const Term& t, std::vector<Formula>& out) {
  if (t.kind() == Term::Kind::SetAbs || t.kind() == Term::Kind::Quote) collect_subformulas(t.body(), out);
}

void collect_subformulas(const Formula& f, std::vector<Formula>& out) {
  out.push_back(f);
  switch (f.kind()) {
    case K::Atom:
    case K::Named:
      return;
    case K::Truth:
      collect_term_subformulas(f.term(), out);
      return;
    case K::Member:
      collect_term_subformulas(f.term(), out);
      collect_term_subformulas(f.rhs_term(), out);
      return;
    case K::Not:
      collect_subformulas(f.left(), out);
      return;
    case K::And:
    case K::Or:
    case K::Imp:
      collect_subformulas(f.left(), out);
      collect_subformulas(f.right(), out);
      return;
  }
}

void collect_terms(const Term& t, std::vector<Term>& out);

void collect_terms(const Formula& f, std::vector<Term>& out) {
  switch (f.kind()) {
    case K::Atom:
    case K::Named:
      return;
    case K::Truth:
      collect_terms(f.term(), out);
      return;
    case K::Member:
      collect_terms(f.term(), out);
      collect_terms(f.rhs_term(), out);
      return;
    case K::Not:
      collect_terms(f.left(), out);
      return;
    case K::And:
    case K::Or:
    case K::Imp:
      collect_terms(f.left(), out);
      collect_terms(f.right(), out);
      return;
  }
}

void collect_terms(const Term& t, std::vector<Term>& out) {
  out.push_back(t);
  if (t.kind() == Term::Kind::SetAbs || t.kind() == Term::Kind::Quote) collect_terms(t.body(), out);
}

template <class T, class Eq>
std::vector<T> dedup(const std::vector<T>& xs, Eq eq) {
  std::vector<T> out;
  for (const T& x : xs)
    if (std::none_of(out.begin(), out.end(), [&](const T& y) { return eq(x, y); })) out.push_back(x);
  return out;
}

void require_declared(const Formula& f, const DefEnv& env, const char* what) {
  for (const auto& c : constants_of(f))
    if (!env.contains(c)) throw FormulaError(std::string(what) + " mentions undeclared constant '" + c + "'");
}

class Saturator {
 public:
  explicit Saturator(const SaturationConfig& cfg)
      : cfg_(cfg), ctx_{cfg.env, cfg.seeds}, pool_(effective_pool(cfg)) {
    res_.max_size = effective_max_size(cfg);
    for (const Formula& f : pool_) {
      std::vector<Term> ts;
      collect_terms(f, ts);
      for (const Term& t : ts)
        if (free_vars(t).empty()) terms_.push_back(t);
    }
    terms_ = dedup(terms_, [](const Term& a, const Term& b) { return terms_equal(a, b); });
    std::set<Rule> enabled(cfg.rules.begin(), cfg.rules.end());
    rules_.assign(enabled.begin(), enabled.end());
  }

  SaturationResult run() {
    for (std::size_t k = 0; k < cfg_.seeds.size(); ++k) {
      const Judgment& s = cfg_.seeds[k];
      require_declared(s.succedent, cfg_.env, "seed");
      if (s.antecedent) require_declared(*s.antecedent, cfg_.env, "seed");
      if (find(s)) continue;
      Justification j;
      j.rule = Rule::Premise;
      j.premise_index = k + 1;
      add(s, j, {}, 0, true);
    }
    std::size_t prev_start = 0;
    for (std::size_t round = 1; round <= cfg_.max_rounds; ++round) {
      const std::size_t n = res_.derived.size();
      round_ = round;
      for (Rule r : rules_) apply(r, prev_start, n);
      if (res_.derived.size() == n) {
        res_.fixpoint = true;
        break;
      }
      res_.rounds = round;
      prev_start = n;
    }
    res_.truncated = res_.pruned > 0 || !res_.fixpoint;
    return std::move(res_);
  }

 private:
  std::optional<std::size_t> find(const Judgment& j) const {
    auto [lo, hi] = index_.equal_range(judgment_hash(j));
    for (auto it = lo; it != hi; ++it)
      if (judgments_equal(res_.derived[it->second].judgment, j)) return it->second;
    return std::nullopt;
  }

  void add(const Judgment& j, Justification just, std::vector<std::size_t> parents, std::size_t round, bool seed) {
    index_.emplace(judgment_hash(j), res_.derived.size());
    res_.derived.push_back(DerivedJudgment{j, std::move(just), std::move(parents), round, seed});
  }

  void offer(const Justification& just, const std::vector<std::size_t>& parents) {
    std::vector<const Judgment*> prems;
    prems.reserve(parents.size());
    for (std::size_t p : parents) prems.push_back(&res_.derived[p].judgment);
    RuleResult out = rule_output(just, prems, ctx_);
    if (!out) return;
    if (out.judgment->size() > res_.max_size) {
      ++res_.pruned;
      return;
    }
    if (just.rule == Rule::MP && cfg_.mode == Mode::Restricted) {
      auto minor = mp_minor_index(*prems[0], *prems[1]);
      if (is_blocked(prems[*minor]->succedent, cfg_.blocked, cfg_.env)) {
        ++res_.blocked_skips;
        return;
      }
    }
    if (find(*out.judgment)) return;
    add(*out.judgment, just, parents, round_, false);
  }

  static Justification plain(Rule r, RuleOption o = RuleOption::None) {
    Justification j;
    j.rule = r;
    j.option = o;
    return j;
  }

  void premise_free(Rule r) {
    switch (r) {
      case Rule::Axiom:
        for (const Schema& s : all_schemas()) {
          const auto& metas = s.metavariables();
          std::vector<std::size_t> pick(metas.size(), 0);
          if (pool_.empty()) break;
          while (true) {
            MatchAssignment sigma;
            for (std::size_t i = 0; i < metas.size(); ++i) sigma.emplace(metas[i], pool_[pick[i]]);
            Justification j = plain(r);
            j.schema = s.id();
            j.formula = instantiate_schema(s, sigma);
            offer(j, {});
            std::size_t i = metas.size();
            while (i > 0 && ++pick[i - 1] == pool_.size()) pick[--i] = 0;
            if (i == 0) break;
          }
        }
        return;
      case Rule::Def:
        for (const auto& [name, definiens] : cfg_.env.entries()) {
          Justification j = plain(r);
          j.name = name;
          offer(j, {});
        }
        return;
      case Rule::TSchema:
        for (const Formula& f : pool_) {
          if (!is_closed(f)) continue;
          Justification j = plain(r);
          j.formula = f;
          offer(j, {});
        }
        return;
      case Rule::Abstraction:
        for (const Formula& f : pool_) {
          for (const auto& x : free_vars(f)) {
            Justification j = plain(r);
            j.name = x;
            j.formula = f;
            offer(j, {});
          }
        }
        return;
      default:
        return;
    }
  }

  void unary(Rule r, std::size_t i) {
    switch (r) {
      case Rule::USpec: {
        auto fv = free_vars(res_.derived[i].judgment.succedent);
        if (!res_.derived[i].judgment.categorical()) return;
        for (const auto& x : fv) {
          for (const Term& t : terms_) {
            Justification j = plain(r);
            j.premises.resize(1);
            if (fv.size() > 1) j.name = x;
            j.term = t;
            offer(j, {i});
          }
        }
        return;
      }
      case Rule::TEnthymeme:
        for (const Formula& f : pool_) {
          if (!is_closed(f)) continue;
          for (RuleOption o : {RuleOption::None, RuleOption::Converse}) {
            Justification j = plain(r, o);
            j.premises.resize(1);
            j.formula = f;
            offer(j, {i});
          }
        }
        return;
      case Rule::ConjGlb:
        for (RuleOption o : {RuleOption::Left, RuleOption::Right}) {
          Justification j = plain(r, o);
          j.premises.resize(1);
          offer(j, {i});
        }
        return;
      default: {
        Justification j = plain(r);
        j.premises.resize(1);
        offer(j, {i});
      }
    }
  }

  void binary(Rule r, std::size_t i, std::size_t k) {
    if (r == Rule::SubstEq) {
      for (RuleOption o : {RuleOption::None, RuleOption::Rtl}) {
        Justification j = plain(r, o);
        j.premises.resize(2);
        offer(j, {i, k});
      }
      return;
    }
    Justification j = plain(r);
    j.premises.resize(2);
    offer(j, {i, k});
  }

  static bool is_binary(Rule r) {
    switch (r) {
      case Rule::MP:
      case Rule::MT:
      case Rule::Adj:
      case Rule::SubstEq:
      case Rule::Trans:
        return true;
      default:
        return false;
    }
  }

  static bool is_premise_free(Rule r) {
    return r == Rule::Axiom || r == Rule::Def || r == Rule::TSchema || r == Rule::Abstraction;
  }

  // Tuples over [0, n) with at least one member in [fresh, n).
  void apply(Rule r, std::size_t fresh, std::size_t n) {
    if (r == Rule::Premise) return;
    if (is_premise_free(r)) {
      if (round_ == 1) premise_free(r);
      return;
    }
    if (r == Rule::ConjGlb || !is_binary(r)) {
      for (std::size_t i = fresh; i < n; ++i) unary(r, i);
    }
    if (r == Rule::ConjGlb || is_binary(r)) {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = (i >= fresh ? 0 : fresh); k < n; ++k) binary(r, i, k);
    }
  }

  const SaturationConfig& cfg_;
  RuleContext ctx_;
  std::vector<Formula> pool_;
  std::vector<Term> terms_;
  std::vector<Rule> rules_;
  SaturationResult res_;
  std::unordered_multimap<std::size_t, std::size_t> index_;
  std::size_t round_ = 0;
};

}  // namespace

std::optional<std::size_t> SaturationResult::find(const Judgment& j) const {
  for (std::size_t i = 0; i < derived.size(); ++i)
    if (judgments_equal(derived[i].judgment, j)) return i;
  return std::nullopt;
}

std::size_t effective_max_size(const SaturationConfig& cfg) {
  if (cfg.max_size) return cfg.max_size;
  std::size_t biggest = 0;
  for (const auto& s : cfg.seeds) biggest = std::max(biggest, s.size());
  return 2 * biggest;
}

std::vector<Formula> effective_pool(const SaturationConfig& cfg) {
  std::vector<Formula> all;
  if (!cfg.pool.empty()) {
    all = cfg.pool;
  } else {
    for (const auto& s : cfg.seeds) {
      if (s.antecedent) collect_subformulas(*s.antecedent, all);
      collect_subformulas(s.succedent, all);
    }
  }
  for (const auto& f : all) require_declared(f, cfg.env, "pool formula");
  return dedup(all, [](const Formula& a, const Formula& b) { return formulas_equal(a, b); });
}

SaturationResult saturate(const SaturationConfig& cfg) {
  if (cfg.max_rounds == 0) throw std::invalid_argument("max_rounds must be positive");
  return Saturator(cfg).run();
}

DerivationScript witness_script(const SaturationConfig& cfg, const SaturationResult& result, std::size_t index) {
  std::set<std::size_t> needed;
  std::vector<std::size_t> todo{index};
  while (!todo.empty()) {
    std::size_t i = todo.back();
    todo.pop_back();
    if (!needed.insert(i).second) continue;
    for (std::size_t p : result.derived.at(i).parents) todo.push_back(p);
  }
  DerivationScript script;
  script.env = cfg.env;
  script.premises = cfg.seeds;
  std::unordered_map<std::size_t, StepId> ids;
  std::uint32_t next = 1;
  for (std::size_t i : needed) {
    const DerivedJudgment& d = result.derived[i];
    StepId id{next++, ""};
    Justification j = d.justification;
    j.premises.clear();
    for (std::size_t p : d.parents) j.premises.push_back(ids.at(p));
    script.steps.push_back(Step{id, d.judgment, std::move(j)});
    ids.emplace(i, id);
  }
  return script;
}

DerivesResult derives_within(const Judgment& goal, const SaturationConfig& cfg) {
  SaturationResult res = saturate(cfg);
  DerivesResult out;
  out.bounded = res.truncated;
  auto idx = res.find(goal);
  if (!idx) return out;
  out.derived = true;
  out.round = res.derived[*idx].round;
  out.witness = witness_script(cfg, res, *idx);
  for (const auto& s : out.witness->steps)
    if (s.justification.rule != Rule::Premise) ++out.inferences;
  return out;
}

// ---------------------------------------------------------------------------
// Config text

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string strip_comment(std::string_view s) {
  auto h = s.find('#');
  return std::string(h == std::string_view::npos ? s : s.substr(0, h));
}

}  // namespace

SaturationJob parse_saturation_config(std::string_view text) {
  SaturationJob job;
  SaturationConfig& cfg = job.config;
  bool rules_given = false;
  bool blocked_given = false;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = strip_comment(raw);
    if (trim(line).empty()) continue;
    auto fail = [&](const std::string& why, std::size_t col = 1) { throw SyntaxError(why, line_no, col); };

    if (trim(line).rfind("def ", 0) == 0) {
      parse::TokenStream ts(parse::lex(line, line_no));
      ts.expect_word("def");
      const auto& name = ts.expect(parse::Tok::UpperIdent, "a constant");
      ts.expect(parse::Tok::Assign, "':='");
      Formula definiens = ts.formula();
      if (!ts.at_end()) ts.fail("unexpected '" + ts.peek().text + "'");
      try {
        cfg.env.define(name.text, definiens);
      } catch (const FormulaError& e) {
        ts.fail_at(name, e.what());
      }
      continue;
    }

    auto eq = line.find('=');
    if (eq == std::string::npos) fail("expected 'key = value'");
    std::string key = trim(std::string_view(line).substr(0, eq));
    std::string value = trim(std::string_view(line).substr(eq + 1));
    std::size_t value_col = line.find_first_not_of(" \t", eq + 1) + 1;
    // Lexing the line with the key blanked out keeps columns accurate.
    auto value_stream = [&]() {
      std::string blanked(eq + 1, ' ');
      blanked += line.substr(eq + 1);
      return parse::TokenStream(parse::lex(blanked, line_no));
    };
    auto number = [&]() {
      std::size_t n = 0;
      auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), n);
      if (ec != std::errc() || ptr != value.data() + value.size() || n == 0)
        fail(key + " must be a positive integer", value_col);
      return n;
    };

    if (key == "mode") {
      if (value == "unrestricted") cfg.mode = Mode::Unrestricted;
      else if (value == "restricted") cfg.mode = Mode::Restricted;
      else fail("mode must be 'unrestricted' or 'restricted'", value_col);
    } else if (key == "blocked") {
      try {
        cfg.blocked = parse_blocked_spec(value);
      } catch (const SyntaxError& e) {
        fail(e.message(), value_col);
      }
      blocked_given = true;
    } else if (key == "rules") {
      rules_given = true;
      std::istringstream names(value);
      std::string name;
      while (std::getline(names, name, ',')) {
        name = trim(name);
        if (name.empty()) continue;
        auto r = rule_from_string(name);
        if (!r) fail("unknown rule '" + name + "'", value_col);
        if (std::find(cfg.rules.begin(), cfg.rules.end(), *r) == cfg.rules.end()) cfg.rules.push_back(*r);
      }
    } else if (key == "max_size") {
      cfg.max_size = number();
    } else if (key == "max_rounds") {
      cfg.max_rounds = number();
    } else if (key == "seed" || key == "goal") {
      auto ts = value_stream();
      Judgment j = ts.judgment();
      if (!ts.at_end()) ts.fail("unexpected '" + ts.peek().text + "'");
      if (key == "seed") {
        cfg.seeds.push_back(std::move(j));
      } else {
        if (job.goal) fail("goal given twice");
        job.goal = std::move(j);
      }
    } else if (key == "pool") {
      auto ts = value_stream();
      cfg.pool.push_back(ts.formula());
      if (!ts.at_end()) ts.fail("unexpected '" + ts.peek().text + "'");
    } else {
      fail("unknown key '" + key + "'");
    }
  }
  if (!rules_given) cfg.rules = all_rules();
  if (cfg.mode == Mode::Restricted && !blocked_given) cfg.blocked = make_curry_set(FormulaSet::everything());

  auto check_constants = [&](const Formula& f, const char* what) {
    for (const auto& c : constants_of(f))
      if (!cfg.env.contains(c)) throw SyntaxError(std::string(what) + " mentions undeclared constant '" + c + "'", 1, 1);
  };
  for (const auto& s : cfg.seeds) {
    check_constants(s.succedent, "seed");
    if (s.antecedent) check_constants(*s.antecedent, "seed");
  }
  for (const auto& f : cfg.pool) check_constants(f, "pool formula");
  return job;
}

std::string render_saturation(const SaturationJob& job, const SaturationResult& result, Format format) {
  const SaturationConfig& cfg = job.config;
  auto derivation = [&](const DerivedJudgment& d) {
    Justification j = d.justification;
    j.premises.clear();
    for (std::size_t p : d.parents) j.premises.push_back(StepId{static_cast<std::uint32_t>(p + 1), ""});
    return render_justification(j);
  };
  std::optional<std::size_t> goal_index;
  std::optional<DerivationScript> witness;
  if (job.goal) {
    goal_index = result.find(*job.goal);
    if (goal_index) witness = witness_script(cfg, result, *goal_index);
  }

  if (format == Format::Json) {
    using nlohmann::ordered_json;
    ordered_json doc;
    doc["mode"] = std::string(to_string(cfg.mode));
    doc["blocked"] = cfg.mode == Mode::Restricted ? ordered_json(to_string(cfg.blocked)) : ordered_json();
    auto rules = ordered_json::array();
    std::set<Rule> enabled(cfg.rules.begin(), cfg.rules.end());
    for (Rule r : enabled) rules.push_back(std::string(to_string(r)));
    doc["rules"] = std::move(rules);
    doc["max_size"] = result.max_size;
    doc["max_rounds"] = cfg.max_rounds;
    doc["rounds"] = result.rounds;
    doc["fixpoint"] = result.fixpoint;
    doc["truncated"] = result.truncated;
    doc["pruned"] = result.pruned;
    doc["blocked_skips"] = result.blocked_skips;
    auto derived = ordered_json::array();
    for (std::size_t i = 0; i < result.derived.size(); ++i) {
      const auto& d = result.derived[i];
      ordered_json rec;
      rec["index"] = i + 1;
      rec["round"] = d.round;
      rec["judgment"] = render_judgment(d.judgment);
      rec["by"] = derivation(d);
      derived.push_back(std::move(rec));
    }
    doc["derived"] = std::move(derived);
    if (job.goal) {
      ordered_json g;
      g["judgment"] = render_judgment(*job.goal);
      g["derived"] = goal_index.has_value();
      if (goal_index) {
        g["round"] = result.derived[*goal_index].round;
        auto lines = ordered_json::array();
        std::istringstream in(render_script(*witness));
        for (std::string line; std::getline(in, line);) lines.push_back(line);
        g["witness"] = std::move(lines);
      } else {
        g["within_bounds_only"] = true;
      }
      doc["goal"] = std::move(g);
    } else {
      doc["goal"] = nullptr;
    }
    return doc.dump(2) + "\n";
  }

  std::ostringstream os;
  os << "mode: " << to_string(cfg.mode);
  if (cfg.mode == Mode::Restricted) os << " (V = " << to_string(cfg.blocked) << ")";
  os << "\nrules:";
  std::set<Rule> enabled(cfg.rules.begin(), cfg.rules.end());
  for (Rule r : enabled) os << " " << to_string(r);
  os << "\nbounds: max_size " << result.max_size << ", max_rounds " << cfg.max_rounds << "\n";
  os << "rounds: " << result.rounds << (result.fixpoint ? " (fixpoint)" : " (round limit)") << "\n";
  os << "truncated: " << (result.truncated ? "yes" : "no") << " (pruned " << result.pruned << ", blocked MP "
     << result.blocked_skips << ")\n";
  os << "derived: " << result.derived.size() << "\n";
  for (std::size_t i = 0; i < result.derived.size(); ++i) {
    const auto& d = result.derived[i];
    os << "  " << i + 1 << " [round " << d.round << "] " << render_judgment(d.judgment) << "  by " << derivation(d)
       << "\n";
  }
  if (job.goal) {
    os << "goal: " << render_judgment(*job.goal);
    if (goal_index) {
      os << " derived in round " << result.derived[*goal_index].round << "\nwitness:\n";
      std::istringstream lines(render_script(*witness));
      std::string l;
      while (std::getline(lines, l)) os << "  " << l << "\n";
    } else {
      os << " not derived within bounds\n";
    }
  }
  return os.str();
}

}  // namespace lpcheck
