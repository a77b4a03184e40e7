#ifndef GSPKIT_COMMANDS_HPP
#define GSPKIT_COMMANDS_HPP

#include <ostream>
#include <string>
#include <vector>

namespace gspkit {

// Exit codes shared by every subcommand.
enum ExitCode : int {
  kExitOk = 0,
  kExitRejected = 1,  // verification negative, infeasible request
  kExitUsage = 2,     // bad flags, unreadable or malformed input
  kExitInternal = 3,  // invariant breach; always a bug
};

// Runs the command line `args` (without the program name), writing normal
// output to `out` and diagnostics to `err`. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace gspkit

#endif  // GSPKIT_COMMANDS_HPP
