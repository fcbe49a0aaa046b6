// lpcheck command-line tool. Talks to the library only through lpcheck.h.

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lpcheck/lpcheck.h"

namespace {

constexpr const char* kExitCodes =
    "Exit codes:\n"
    "  0  ok (all steps check, no lint violations, saturation ran)\n"
    "  1  usage, I/O or parse error\n"
    "  2  derivation rejected (some step is rejected or malformed)\n"
    "  3  lint found a variable-sharing violation\n";

struct Freer {
  void operator()(char* s) const { lpc_string_free(s); }
  void operator()(lpc_script* s) const { lpc_script_free(s); }
  void operator()(lpc_report* r) const { lpc_report_free(r); }
  void operator()(lpc_lint* l) const { lpc_lint_free(l); }
  void operator()(lpc_saturation* s) const { lpc_saturation_free(s); }
};

template <class T>
using Owned = std::unique_ptr<T, Freer>;

std::string take(char* s) {
  Owned<char> owned(s);
  return owned ? std::string(owned.get()) : std::string();
}

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "lpcheck: cannot read '" << path << "'\n";
    return false;
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

int report_error(const std::string& where) {
  std::cerr << "lpcheck: " << where << ": " << lpc_last_error() << "\n";
  return LPC_EXIT_USAGE;
}

lpc_format format_of(const std::string& f) { return f == "json" ? LPC_FORMAT_JSON : LPC_FORMAT_TEXT; }

lpc_mode mode_of(const std::string& m) { return m == "restricted" ? LPC_RESTRICTED : LPC_UNRESTRICTED; }

// Resolves the blocked spec for restricted runs, noting the default on stderr.
bool resolve_blocked(lpc_mode mode, const std::string& given, const char* fallback, std::string& spec) {
  if (mode != LPC_RESTRICTED) return true;
  if (given.empty()) {
    spec = fallback;
    std::cerr << "note: restricted mode without --blocked; using V = " << spec << "\n";
    return true;
  }
  char* canonical = nullptr;
  if (lpc_blocked_normalize(given.c_str(), &canonical) != LPC_OK) {
    report_error("--blocked");
    return false;
  }
  spec = take(canonical);
  return true;
}

int run_check(const std::vector<std::string>& files, lpc_mode mode, const std::string& blocked_flag,
              lpc_format format) {
  std::string blocked;
  if (!resolve_blocked(mode, blocked_flag, "curry-set(all)", blocked)) return LPC_EXIT_USAGE;
  int exit_code = LPC_EXIT_OK;
  for (const auto& path : files) {
    if (files.size() > 1 && format == LPC_FORMAT_TEXT) std::cout << "== " << path << "\n";
    std::string text;
    if (!read_file(path, text)) {
      exit_code = LPC_EXIT_USAGE;
      continue;
    }
    lpc_script* raw = nullptr;
    if (lpc_script_parse(text.c_str(), &raw) != LPC_OK) {
      report_error(path);
      exit_code = LPC_EXIT_USAGE;
      continue;
    }
    Owned<lpc_script> script(raw);
    lpc_report* rep = nullptr;
    if (lpc_check(script.get(), mode, blocked.empty() ? nullptr : blocked.c_str(), &rep) != LPC_OK) {
      report_error(path);
      exit_code = LPC_EXIT_USAGE;
      continue;
    }
    Owned<lpc_report> report(rep);
    char* out = nullptr;
    if (lpc_report_render(report.get(), format, &out) != LPC_OK) return report_error(path);
    std::cout << take(out);
    if (exit_code == LPC_EXIT_OK) exit_code = lpc_report_exit_code(report.get());
  }
  return exit_code;
}

int run_demo(const std::string& variant, lpc_mode mode, const std::string& blocked_flag, const std::string& falsum,
             lpc_format format) {
  const char* fallback = lpc_demo_default_blocked(variant.c_str());
  if (!fallback) {
    std::cerr << "lpcheck: unknown demo variant '" << variant << "' (expected curry-set or curry-truth)\n";
    return LPC_EXIT_USAGE;
  }
  std::string blocked;
  if (!resolve_blocked(mode, blocked_flag, fallback, blocked)) return LPC_EXIT_USAGE;
  lpc_script* raw = nullptr;
  if (lpc_script_demo(variant.c_str(), falsum.empty() ? nullptr : falsum.c_str(), &raw) != LPC_OK)
    return report_error("demo");
  Owned<lpc_script> script(raw);
  lpc_report* rep = nullptr;
  if (lpc_check(script.get(), mode, blocked.empty() ? nullptr : blocked.c_str(), &rep) != LPC_OK)
    return report_error("demo");
  Owned<lpc_report> report(rep);

  char* script_text = nullptr;
  char* report_text = nullptr;
  if (lpc_script_render(script.get(), &script_text) != LPC_OK) return report_error("demo");
  std::string rendered_script = take(script_text);
  if (lpc_report_render(report.get(), format, &report_text) != LPC_OK) return report_error("demo");
  std::string rendered_report = take(report_text);

  if (format == LPC_FORMAT_JSON) {
    nlohmann::ordered_json doc;
    doc["variant"] = variant;
    auto lines = nlohmann::ordered_json::array();
    std::istringstream in(rendered_script);
    for (std::string line; std::getline(in, line);) lines.push_back(line);
    doc["script"] = std::move(lines);
    doc["report"] = nlohmann::ordered_json::parse(rendered_report);
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << rendered_script << "\n" << rendered_report;
  }
  return lpc_report_exit_code(report.get());
}

int run_lint(const std::string& path, lpc_format format) {
  std::string text;
  if (!read_file(path, text)) return LPC_EXIT_USAGE;
  lpc_lint* raw = nullptr;
  if (lpc_lint_text(text.c_str(), &raw) != LPC_OK) return report_error(path);
  Owned<lpc_lint> lint(raw);
  char* out = nullptr;
  if (lpc_lint_render(lint.get(), format, &out) != LPC_OK) return report_error(path);
  std::cout << take(out);
  return lpc_lint_exit_code(lint.get());
}

int run_saturate(const std::string& path, lpc_format format) {
  std::string text;
  if (!read_file(path, text)) return LPC_EXIT_USAGE;
  lpc_saturation* raw = nullptr;
  if (lpc_saturate(text.c_str(), &raw) != LPC_OK) return report_error(path);
  Owned<lpc_saturation> sat(raw);
  char* out = nullptr;
  if (lpc_saturation_render(sat.get(), format, &out) != LPC_OK) return report_error(path);
  std::cout << take(out);
  return LPC_EXIT_OK;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Proof checker for LP# with restricted modus ponens"};
  app.footer(kExitCodes);
  app.require_subcommand(1);

  const std::vector<std::string> modes{"unrestricted", "restricted"};
  const std::vector<std::string> formats{"text", "json"};

  std::vector<std::string> check_files;
  std::string mode = "unrestricted";
  std::string blocked;
  std::string format = "text";
  auto* check = app.add_subcommand("check", "Check proof scripts");
  check->add_option("file", check_files, "Proof script(s)")->required()->check(CLI::ExistingFile);
  check->add_option("--mode", mode, "Modus ponens regime")->check(CLI::IsMember(modes));
  check->add_option("--blocked", blocked, "Blocked set V, e.g. curry-set(all), curry-truth(all; T), none");
  check->add_option("--format", format, "Report format")->check(CLI::IsMember(formats));

  std::string variant;
  std::string falsum;
  auto* demo = app.add_subcommand("demo", "Replay a built-in Curry derivation");
  demo->add_option("variant", variant, "curry-set or curry-truth")->required();
  demo->add_option("--mode", mode, "Modus ponens regime")->check(CLI::IsMember(modes));
  demo->add_option("--blocked", blocked, "Blocked set V");
  demo->add_option("--format", format, "Report format")->check(CLI::IsMember(formats));
  demo->add_option("--falsum", falsum, "Conclusion F of the Curry derivation (default f)");

  std::string lint_file;
  auto* lint = app.add_subcommand("lint", "Variable-sharing lint over a formula list");
  lint->add_option("file", lint_file, "One formula per line")->required()->check(CLI::ExistingFile);
  lint->add_option("--format", format, "Report format")->check(CLI::IsMember(formats));

  std::string config;
  auto* sat = app.add_subcommand("saturate", "Bounded forward chaining from a config file");
  sat->add_option("config", config, "Saturation config")->required()->check(CLI::ExistingFile);
  sat->add_option("--format", format, "Report format")->check(CLI::IsMember(formats));

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return LPC_EXIT_USAGE;
  }

  if (*check) return run_check(check_files, mode_of(mode), blocked, format_of(format));
  if (*demo) return run_demo(variant, mode_of(mode), blocked, falsum, format_of(format));
  if (*lint) return run_lint(lint_file, format_of(format));
  return run_saturate(config, format_of(format));
}
