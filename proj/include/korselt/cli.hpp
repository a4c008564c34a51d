#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace korselt::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kDomain = 2,
    kVerifyFailed = 3,
};

/// Entry point behind the `korselt` binary. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace korselt::cli
