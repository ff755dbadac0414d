#pragma once

#include <ostream>

namespace natanzon::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kDomain = 2, kNumerical = 3 };

// Entry point of the `natanzon` tool with injectable streams so tests can
// run commands in-process. Data goes to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace natanzon::cli
