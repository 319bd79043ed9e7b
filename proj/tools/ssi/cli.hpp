#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ssi::cli {

/// Exit statuses shared by every subcommand.
enum Status : int {
  ok = 0,
  mismatch = 1,  ///< verdict differs from --expect-*, proof rejected, suite failure
  usage = 2,     ///< bad flags, unreadable input, parse errors
};

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ssi::cli
