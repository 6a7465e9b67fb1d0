#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace minksum::cli {

enum ExitCode : int {
    kSuccess = 0,
    kUsageError = 1,     ///< bad flags, unreadable or invalid problem file
    kNotConverged = 2,   ///< solver hit its iteration cap, or verify failed
};

/// Entry point of the `minksum` tool; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace minksum::cli
