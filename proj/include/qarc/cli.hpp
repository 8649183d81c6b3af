#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qarc {

/// Entry point behind the `qarc` binary, separated so tests can drive it
/// in-process.  `args` excludes the program name.  Exit codes: 0 success,
/// 1 numerical failure (diagnostic JSON on the error stream), 2 invalid
/// configuration (message names the offending flag).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qarc
