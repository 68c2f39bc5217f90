#pragma once

#include <string>
#include <vector>

namespace moat::tools {

/// Runs one CLI invocation (args excluding the program name) and returns the
/// process exit code: 0 success, 2 config error, 3 indicator-input error,
/// 4 dimensionality error, 5 data-coverage error, 1 anything else.
int run_cli(const std::vector<std::string>& args);

}  // namespace moat::tools
