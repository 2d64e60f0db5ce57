#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace morpho::cli {

/// Runs one invocation; args exclude the program name.
/// Exit codes: 0 true/accepted, 1 false/rejected, 2 usage, parse or model error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace morpho::cli
