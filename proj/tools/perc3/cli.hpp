#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace perc3::cli {

enum ExitCode : int { kOk = 0, kValidation = 2, kViolation = 3, kIo = 4 };

/// Parses `args` (without the program name) and runs one subcommand.
/// Reports go to --out, or to `out` when --out is "-" (the default);
/// diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Tokens contributed by a --config file: the `args=` line of a report
/// header when present, otherwise one `--key value` pair per key=value line.
/// Lines may carry a leading "# ".
std::vector<std::string> config_tokens(const std::string& text);

}  // namespace perc3::cli
