#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace concat {

/// Runs the command line `args` (without the program name). Exit codes: 0 success, 1 a verdict
/// failure (proof check failed, proof refused, PCP disagreement, invalid solution), 2 a usage
/// or input error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace concat
