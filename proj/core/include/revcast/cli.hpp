#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "revcast/dataset.hpp"
#include "revcast/scenario.hpp"

namespace revcast {

/// Everything one invocation produced, ready to serialize. `payload_json`
/// holds the command-specific result as a canonical JSON object so this
/// header stays free of any particular JSON library.
struct RunReport {
  std::string command;
  std::uint64_t seed = 42;
  std::map<std::string, std::string> input_digests;  // path -> 64-bit hex
  std::vector<std::string> warnings;
  std::string payload_json;
};

/// Renders the full report document: top-level keys command, inputs,
/// result, seed, warnings, sorted, 2-space indent, trailing newline.
/// Byte-identical for identical inputs and seed.
std::string render_report(const RunReport& report);

/// FNV-1a 64-bit digest of the file's bytes as 16 lowercase hex digits.
/// Throws missing-file when the file cannot be opened.
std::string file_digest(const std::string& path);

/// Assembles a scenario from the flat key=value format:
///   target=<column>  base_year=<int>  horizon=<int>  intercept=true|false
///   driver.<name>.history=<column>  driver.<name>.path=<comma fractions>
/// `#` starts a comment line. Column refs resolve against `data`. Driver
/// order follows first mention. Unknown keys raise configuration errors.
ScenarioSpec parse_scenario_file(const std::string& text, const Dataset& data);

/// Dispatches one CLI invocation (argv without the program name). Results
/// go to `out` as human tables, or as a RunReport JSON document under
/// --json; error paths print a machine-parsable `error: <code>` line to
/// `err` before the explanation. Returns the process exit code: 0 success,
/// 1 domain error, 2 usage error.
int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err);

}  // namespace revcast
