#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace spheretik {

/// Parses and executes one command line (without the program name).
/// Returns the process exit code: 0 success, 1 usage/validation/parse error,
/// 2 solver did not converge (results still written), 3 --require-tight set
/// but the solution could not be certified.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spheretik
