#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sunflower::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
    kOk = 0,        ///< success / found / holds
    kNegative = 1,  ///< not found / violated
    kUsage = 2,     ///< usage or input error
};

/// Runs `sfl` with `args` (program name excluded), writing to `out` and `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sunflower::cli
