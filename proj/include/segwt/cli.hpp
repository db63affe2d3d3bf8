#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace segwt {

// Exit codes of the segwt command.
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 2,
    kExitInput = 3,     // parse, validation, tie
    kExitQuery = 4,     // query argument outside its domain
    kExitMismatch = 5,  // verify found a disagreement
    kExitIo = 6,        // unreadable file, corrupt container
};

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace segwt
