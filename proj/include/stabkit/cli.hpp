#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace stabkit::cli {

/// Runs the stabkit command line. args excludes the program name.
/// Exit codes: 0 success, 1 infeasible input or failed verification,
/// 2 usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace stabkit::cli
