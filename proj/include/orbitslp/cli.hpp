#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace orbitslp {

/// Process exit codes.
enum ExitCode : int {
    kExitOk = 0,         // success, or SAME-ORBIT
    kExitDifferent = 1,  // DIFFERENT-ORBIT
    kExitInput = 2,      // parse, input, arity or file errors
    kExitCeiling = 3,    // compile ceiling exceeded
};

/// Runs one command; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace orbitslp
