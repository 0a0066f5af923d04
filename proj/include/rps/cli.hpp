#pragma once

#include <iosfwd>

namespace rps {

/// Process exit codes.
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitDataError = 2,
    kExitDegenerate = 3,
};

/// Entry point of the `rpscycles` command line tool; returns the exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rps
