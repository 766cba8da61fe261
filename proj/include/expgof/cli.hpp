#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace expgof {

// Exit status of run_command.
enum ExitCode : int { kExitOk = 0, kExitValidation = 1, kExitNumerical = 2 };

// Parses argv (argv[0] is the program name), runs the subcommand and writes
// its table to --output (default: `out`). Messages and the resolved seed go
// to `err`.
int run_command(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace expgof
