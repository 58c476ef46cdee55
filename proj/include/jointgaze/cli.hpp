#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace jointgaze {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitInputError = 1, kExitInternalError = 2 };

/// Entry point of the `jointgaze` tool: subcommands detect, simulate, eval, overlay.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Worker cap from JOINTGAZE_THREADS (unset or invalid means 1).
unsigned threads_from_env();

}  // namespace jointgaze
