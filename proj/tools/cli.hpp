#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bicens::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;  // certificate / convergence failure
inline constexpr int kInputError = 2;

// Runs the command line `args` (args[0] is the program name). Regular output
// goes to `out` when no output file is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bicens::cli
