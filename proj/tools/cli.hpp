#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vcavity::cli {

enum ExitCode : int { kSuccess = 0, kValidationFailure = 1, kBadArguments = 2 };

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name. Output without --out goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vcavity::cli
