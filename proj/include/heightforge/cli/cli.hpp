#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace heightforge {

/// Exit codes of the command-line tool.
enum ExitCode { exit_ok = 0, exit_usage = 1, exit_inconclusive = 2, exit_parse = 3, exit_precision = 4 };

/// Runs one command (arguments without the program name), writing JSON
/// results to `out` and JSON error objects to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Splits a comma-separated list at commas outside parentheses and brackets.
std::vector<std::string> split_list(const std::string& text);

} // namespace heightforge
