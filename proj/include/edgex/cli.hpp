#ifndef EDGEX_CLI_HPP
#define EDGEX_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace edgex::cli {

// Exit codes of the edgex binary.
enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kUsage = 2,
  kParameter = 3,
};

// Runs the CLI on `args` (args[0] is the program name) and returns the exit
// code. Subcommands: sample, diagnose, verify, enumerate.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace edgex::cli

#endif  // EDGEX_CLI_HPP
