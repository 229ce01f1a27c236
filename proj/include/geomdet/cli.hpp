#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace geomdet::cli {

inline constexpr const char* tool_version = "geomdet 0.1.0";

// Exit codes of the command-line tool.
enum ExitCode : int {
  ok = 0,
  usage = 1,
  spec = 2,
  erasure = 3,
  disagreement = 4,
  estimator = 5,
  figure_invariant = 6,
};

// Runs one invocation; args excludes the program name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace geomdet::cli
