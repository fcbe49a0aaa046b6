#pragma once

// Proof-script text format and report serialisation.
//
//   # comment
//   def C := T[C] -> f
//   premise p
//   premise p |- q
//   1a: C <-> (T[C] -> f) by DEF(C)
//   5: p & c |- q by T_ENTHYMEME(2, q)
//
// A step line is `<id>: [<formula> |-] <formula> by <RULE>[(<args>)]`.

#include <string>
#include <string_view>

#include "lpcheck/kernel.hpp"

namespace lpcheck {

/// `[formula |-] formula`; throws SyntaxError.
Judgment parse_judgment(std::string_view text);

/// Throws SyntaxError (with the offending line) on malformed input.
DerivationScript parse_script(std::string_view text);

/// Text that parse_script reads back to an identical script.
std::string render_script(const DerivationScript& script);
std::string render_justification(const Justification& j);
/// Judgment as written in a script: the categorical form has no turnstile.
std::string render_script_judgment(const Judgment& j);

enum class Format { Text, Json };

/// Byte-stable for identical reports.
std::string render_report(const CheckReport& report, Format format);

}  // namespace lpcheck
