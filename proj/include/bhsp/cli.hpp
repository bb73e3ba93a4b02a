#pragma once

// Command-line front end. Every subcommand builds a JSON report; `run` writes
// it to the configured destination and returns the process exit status.
//
// Exit status: 0 all assertions passed, 1 an assertion failed, 2 the
// configuration could not be parsed or validated, 3 a size budget was hit.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace bhsp::cli {

enum class Format { Json, Csv, Pretty };

inline constexpr int kExitOk = 0;
inline constexpr int kExitAssertion = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitBudget = 3;

struct RunConfig {
  std::string subcommand;
  std::string field = "5^1";
  std::optional<std::string> flavor;
  std::optional<std::string> hidden;  // field element, "inf" or "random"
  std::optional<std::size_t> samples;
  std::optional<std::uint64_t> seed;
  int k = 3;
  int d = 3;
  Format format = Format::Json;
  std::optional<std::string> output;  // standard output when empty
};

// Parses argv; throws bhsp::Error(ParseError) on bad input. Returns nullopt
// when help was requested (the help text has already been written to out).
std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out);

// Builds the report for one subcommand. "ok" holds the assertion verdict.
nlohmann::ordered_json build_report(const RunConfig& config);

// Renders a report in the chosen format.
std::string render(const nlohmann::ordered_json& report, Format format);

// Runs the subcommand and emits its report (or a failure record).
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// argv entry point used by the executable.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Rounds to 12 significant digits so printed floats are stable.
double round12(double x);

}  // namespace bhsp::cli
