#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dmt::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kData = 2 };

/// Runs one invocation. `args` excludes the program name. JSON results go to
/// `out`, one-line diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dmt::cli
