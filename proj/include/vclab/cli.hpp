#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vclab {

/// Dispatch one command line (without the program name). Exit codes:
/// 0 success, 1 verification failure, 2 usage error, 3 budget exhausted.
int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err);

}  // namespace vclab
