#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace agdrc {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitInvalidInput = 2, kExitDisagreement = 3 };

/// Entry point of the `agd-rc` tool; JSON reports go to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace agdrc
