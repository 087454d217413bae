#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace colstr::cli {

/// Exit codes: 0 pass or successful query, 1 failed verdict, 2 usage or
/// input error.
enum ExitCode : int { kPass = 0, kFail = 1, kUsage = 2 };

/// Runs the command line (without the program name), writing results to
/// out and diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace colstr::cli
