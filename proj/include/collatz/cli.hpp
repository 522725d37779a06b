#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace collatz::cli {

// Exit codes: 0 success, 1 usage or precondition violation, 2 undecided
// (a step budget ran out before the answer was known).
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitUndecided = 2;

// Runs one CLI invocation. args excludes the program name. All regular
// output goes to `out` (duplicated to --out FILE when given), messages to
// `err`. Never throws; every failure maps to an exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace collatz::cli
