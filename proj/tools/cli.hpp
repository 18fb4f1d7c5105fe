// tools/cli.hpp
//
// Command-line front end. `run_cli` is the whole program minus process
// plumbing, so tests can drive it with in-memory streams.
//
// Exit codes: 0 verdict computed, 1 differential check found failures,
// 2 malformed input or usage, 3 resource refusal, 4 internal validation
// failure.

#ifndef ORDLTL_TOOLS_CLI_HPP
#define ORDLTL_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace ordltl::cli {

enum ExitCode : int {
    kOk = 0,
    kCheckFailed = 1,
    kBadInput = 2,
    kRefused = 3,
    kInternal = 4,
};

/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ordltl::cli

#endif  // ORDLTL_TOOLS_CLI_HPP
