#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace binstretch::cli {

enum ExitCode : int
{
    exit_proven = 0,
    exit_not_proven = 1,
    exit_inconclusive = 2,
    exit_usage = 3,
};

/// Runs the command line `args` (args[0] is the program name) and returns the exit status.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace binstretch::cli
