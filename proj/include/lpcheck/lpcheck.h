#ifndef LPCHECK_H
#define LPCHECK_H

/* C interface to the lpcheck proof kernel.
 *
 * Handles are opaque and owned by the caller; release each with its _free
 * function. Strings returned through `char**` are heap copies released with
 * lpc_string_free. `const char*` results borrow from the handle and stay valid
 * until it is freed. On failure a function returns a non-zero lpc_status and
 * lpc_last_error() describes the problem (per thread). */

#include <stddef.h>

#if defined(_WIN32)
#define LPC_API __declspec(dllexport)
#else
#define LPC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lpc_status {
  LPC_OK = 0,
  LPC_PARSE_ERROR = 1,
  LPC_INVALID_ARGUMENT = 2,
  LPC_INTERNAL_ERROR = 3
} lpc_status;

typedef enum lpc_mode { LPC_UNRESTRICTED = 0, LPC_RESTRICTED = 1 } lpc_mode;

typedef enum lpc_format { LPC_FORMAT_TEXT = 0, LPC_FORMAT_JSON = 1 } lpc_format;

typedef enum lpc_step_status { LPC_STEP_OK = 0, LPC_STEP_REJECTED = 1, LPC_STEP_MALFORMED = 2 } lpc_step_status;

/* Exit codes shared with the command-line tool. */
enum { LPC_EXIT_OK = 0, LPC_EXIT_USAGE = 1, LPC_EXIT_REJECTED = 2, LPC_EXIT_LINT = 3 };

typedef struct lpc_script lpc_script;
typedef struct lpc_report lpc_report;
typedef struct lpc_lint lpc_lint;
typedef struct lpc_saturation lpc_saturation;

LPC_API const char* lpc_version(void);
LPC_API const char* lpc_last_error(void);
LPC_API void lpc_string_free(char* s);

/* Parses a formula and prints it back in canonical form. */
LPC_API lpc_status lpc_formula_normalize(const char* text, char** out);

/* Canonical text of a blocked-set spec such as "curry-set(all)". */
LPC_API lpc_status lpc_blocked_normalize(const char* spec, char** out);

LPC_API lpc_status lpc_script_parse(const char* text, lpc_script** out);
/* variant: "curry-set" or "curry-truth"; falsum: formula text or NULL for "f". */
LPC_API lpc_status lpc_script_demo(const char* variant, const char* falsum, lpc_script** out);
/* Blocked spec the restricted replay of a demo variant uses by default. */
LPC_API const char* lpc_demo_default_blocked(const char* variant);
LPC_API lpc_status lpc_script_render(const lpc_script* script, char** out);
LPC_API size_t lpc_script_step_count(const lpc_script* script);
LPC_API void lpc_script_free(lpc_script* script);

/* blocked: spec text; NULL means "curry-set(all)". Ignored when unrestricted. */
LPC_API lpc_status lpc_check(const lpc_script* script, lpc_mode mode, const char* blocked, lpc_report** out);
LPC_API int lpc_report_all_ok(const lpc_report* report);
/* LPC_EXIT_OK when every step is ok, LPC_EXIT_REJECTED otherwise. */
LPC_API int lpc_report_exit_code(const lpc_report* report);
LPC_API size_t lpc_report_step_count(const lpc_report* report);
LPC_API lpc_status lpc_report_step(const lpc_report* report, size_t index, const char** id, const char** rule,
                                   lpc_step_status* status, const char** reason);
/* NULL when no step was refused for a blocked minor premise. */
LPC_API const char* lpc_report_blocked_at(const lpc_report* report);
/* NULL unless every step is ok. */
LPC_API const char* lpc_report_conclusion(const lpc_report* report);
LPC_API lpc_status lpc_report_render(const lpc_report* report, lpc_format format, char** out);
LPC_API void lpc_report_free(lpc_report* report);

LPC_API lpc_status lpc_lint_text(const char* text, lpc_lint** out);
LPC_API size_t lpc_lint_finding_count(const lpc_lint* lint);
LPC_API size_t lpc_lint_violations(const lpc_lint* lint);
/* LPC_EXIT_OK or LPC_EXIT_LINT. */
LPC_API int lpc_lint_exit_code(const lpc_lint* lint);
LPC_API lpc_status lpc_lint_render(const lpc_lint* lint, lpc_format format, char** out);
LPC_API void lpc_lint_free(lpc_lint* lint);

LPC_API lpc_status lpc_saturate(const char* config_text, lpc_saturation** out);
LPC_API size_t lpc_saturation_derived_count(const lpc_saturation* sat);
LPC_API size_t lpc_saturation_rounds(const lpc_saturation* sat);
LPC_API int lpc_saturation_truncated(const lpc_saturation* sat);
/* 1 derived, 0 not derived within bounds, -1 no goal configured. */
LPC_API int lpc_saturation_goal_derived(const lpc_saturation* sat);
LPC_API lpc_status lpc_saturation_render(const lpc_saturation* sat, lpc_format format, char** out);
LPC_API void lpc_saturation_free(lpc_saturation* sat);

#ifdef __cplusplus
}
#endif

#endif
