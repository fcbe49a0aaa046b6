#include "lpcheck/lpcheck.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "lpcheck/lint.hpp"
#include "lpcheck/saturator.hpp"
#include "lpcheck/scenarios.hpp"
#include "lpcheck/script.hpp"
#include "lpcheck/syntax.hpp"

using namespace lpcheck;

struct lpc_script {
  DerivationScript script;
};

struct lpc_report {
  CheckReport report;
  std::vector<std::string> ids;
  std::vector<std::string> rules;
  std::string blocked_at;
  std::string conclusion;
};

struct lpc_lint {
  LintReport report;
};

struct lpc_saturation {
  SaturationJob job;
  SaturationResult result;
};

namespace {

thread_local std::string last_error;

lpc_status fail(lpc_status s, std::string why) {
  last_error = std::move(why);
  return s;
}

char* copy_out(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

// Runs `body`, mapping exceptions to status codes.
template <class F>
lpc_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return LPC_OK;
  } catch (const SyntaxError& e) {
    return fail(LPC_PARSE_ERROR, e.what());
  } catch (const FormulaError& e) {
    return fail(LPC_INVALID_ARGUMENT, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(LPC_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(LPC_INTERNAL_ERROR, e.what());
  } catch (...) {
    return fail(LPC_INTERNAL_ERROR, "unknown error");
  }
}

Format to_format(lpc_format f) { return f == LPC_FORMAT_JSON ? Format::Json : Format::Text; }

std::optional<CurryVariant> variant_of(const char* name) {
  if (!name) return std::nullopt;
  std::string v(name);
  if (v == "curry-set") return CurryVariant::Set;
  if (v == "curry-truth") return CurryVariant::Truth;
  return std::nullopt;
}

}  // namespace

extern "C" {

const char* lpc_version(void) { return "1.0.0"; }

const char* lpc_last_error(void) { return last_error.c_str(); }

void lpc_string_free(char* s) { std::free(s); }

lpc_status lpc_formula_normalize(const char* text, char** out) {
  if (!text || !out) return fail(LPC_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = copy_out(render_formula(parse_formula(text))); });
}

lpc_status lpc_blocked_normalize(const char* spec, char** out) {
  if (!spec || !out) return fail(LPC_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = copy_out(to_string(parse_blocked_spec(spec))); });
}

lpc_status lpc_script_parse(const char* text, lpc_script** out) {
  if (!text || !out) return fail(LPC_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = new lpc_script{parse_script(text)}; });
}

lpc_status lpc_script_demo(const char* variant, const char* falsum, lpc_script** out) {
  if (!out) return fail(LPC_INVALID_ARGUMENT, "null argument");
  auto v = variant_of(variant);
  if (!v)
    return fail(LPC_INVALID_ARGUMENT, "unknown demo variant '" + std::string(variant ? variant : "") +
                                          "' (expected curry-set or curry-truth)");
  return guarded([&] {
    ScenarioConfig cfg;
    cfg.variant = *v;
    if (falsum) cfg.falsum = parse_formula(falsum);
    *out = new lpc_script{scenario_script(cfg)};
  });
}

const char* lpc_demo_default_blocked(const char* variant) {
  auto v = variant_of(variant);
  if (!v) return nullptr;
  return *v == CurryVariant::Set ? "curry-set(all)" : "curry-truth(all; T)";
}

lpc_status lpc_script_render(const lpc_script* script, char** out) {
  if (!script || !out) return fail(LPC_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = copy_out(render_script(script->script)); });
}

size_t lpc_script_step_count(const lpc_script* script) { return script ? script->script.steps.size() : 0; }

void lpc_script_free(lpc_script* script) { delete script; }

lpc_status lpc_check(const lpc_script* script, lpc_mode mode, const char* blocked, lpc_report** out) {
  if (!script || !out) return fail(LPC_INVALID_ARGUMENT, "null argument");
  if (mode != LPC_UNRESTRICTED && mode != LPC_RESTRICTED) return fail(LPC_INVALID_ARGUMENT, "unknown mode");
  return guarded([&] {
    BlockedSetSpec spec = blocked ? parse_blocked_spec(blocked) : make_curry_set(FormulaSet::everything());
    auto r = std::make_unique<lpc_report>();
    r->report = check_script(script->script, mode == LPC_RESTRICTED ? Mode::Restricted : Mode::Unrestricted, spec);
    for (const auto& s : r->report.steps) {
      r->ids.push_back(s.id.str());
      r->rules.emplace_back(to_string(s.rule));
    }
    if (r->report.blocked_at) r->blocked_at = r->report.blocked_at->str();
    if (r->report.conclusion) r->conclusion = render_judgment(*r->report.conclusion);
    *out = r.release();
  });
}

int lpc_report_all_ok(const lpc_report* report) { return report && report->report.all_ok() ? 1 : 0; }

int lpc_report_exit_code(const lpc_report* report) {
  return lpc_report_all_ok(report) ? LPC_EXIT_OK : LPC_EXIT_REJECTED;
}

size_t lpc_report_step_count(const lpc_report* report) { return report ? report->report.steps.size() : 0; }

lpc_status lpc_report_step(const lpc_report* report, size_t index, const char** id, const char** rule,
                           lpc_step_status* status, const char** reason) {
  if (!report) return fail(LPC_INVALID_ARGUMENT, "null argument");
  if (index >= report->report.steps.size()) return fail(LPC_INVALID_ARGUMENT, "step index out of range");
  const StepResult& s = report->report.steps[index];
  if (id) *id = report->ids[index].c_str();
  if (rule) *rule = report->rules[index].c_str();
  if (status) *status = static_cast<lpc_step_status>(s.status);
  if (reason) *reason = s.reason.c_str();
  return LPC_OK;
}

const char* lpc_report_blocked_at(const lpc_report* report) {
  return report && report->report.blocked_at ? report->blocked_at.c_str() : nullptr;
}

const char* lpc_report_conclusion(const lpc_report* report) {
  return report && report->report.conclusion ? report->conclusion.c_str() : nullptr;
}

lpc_status lpc_report_render(const lpc_report* report, lpc_format format, char** out) {
  if (!report || !out) return fail(LPC_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = copy_out(render_report(report->report, to_format(format))); });
}

void lpc_report_free(lpc_report* report) { delete report; }

lpc_status lpc_lint_text(const char* text, lpc_lint** out) {
  if (!text || !out) return fail(LPC_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = new lpc_lint{lint_text(text)}; });
}

size_t lpc_lint_finding_count(const lpc_lint* lint) { return lint ? lint->report.findings.size() : 0; }

size_t lpc_lint_violations(const lpc_lint* lint) { return lint ? lint->report.violations : 0; }

int lpc_lint_exit_code(const lpc_lint* lint) { return lpc_lint_violations(lint) ? LPC_EXIT_LINT : LPC_EXIT_OK; }

lpc_status lpc_lint_render(const lpc_lint* lint, lpc_format format, char** out) {
  if (!lint || !out) return fail(LPC_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = copy_out(render_lint(lint->report, to_format(format))); });
}

void lpc_lint_free(lpc_lint* lint) { delete lint; }

lpc_status lpc_saturate(const char* config_text, lpc_saturation** out) {
  if (!config_text || !out) return fail(LPC_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    auto s = std::make_unique<lpc_saturation>();
    s->job = parse_saturation_config(config_text);
    s->result = saturate(s->job.config);
    *out = s.release();
  });
}

size_t lpc_saturation_derived_count(const lpc_saturation* sat) { return sat ? sat->result.derived.size() : 0; }

size_t lpc_saturation_rounds(const lpc_saturation* sat) { return sat ? sat->result.rounds : 0; }

int lpc_saturation_truncated(const lpc_saturation* sat) { return sat && sat->result.truncated ? 1 : 0; }

int lpc_saturation_goal_derived(const lpc_saturation* sat) {
  if (!sat || !sat->job.goal) return -1;
  return sat->result.find(*sat->job.goal) ? 1 : 0;
}

lpc_status lpc_saturation_render(const lpc_saturation* sat, lpc_format format, char** out) {
  if (!sat || !out) return fail(LPC_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = copy_out(render_saturation(sat->job, sat->result, to_format(format))); });
}

void lpc_saturation_free(lpc_saturation* sat) { delete sat; }

}  // extern "C"
