#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fpp::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitIo = 2,
  kExitVerify = 3,
};

/// Entry point for `fpp <subcommand> ...`. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fpp::cli
