#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace fpl::cli {

enum ExitCode : int {
    kOk = 0,
    kFindings = 1, // violations, or a trajectory that missed 1 within the cap
    kUsage = 2,
    kOverflow = 3,
};

/// Defaults taken from the environment (FPL_OUTPUT, FPL_JOBS).
struct Environment {
    std::optional<std::string> output;
    std::optional<std::string> jobs;

    static Environment from_process();
};

/// Runs one command line (without the program name) and returns the exit
/// code. Reports go to `out` unless an output path is given.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Environment& env = {});

} // namespace fpl::cli
