#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace natt::cli {

enum ExitCode : int {
  kOk = 0,
  kViolations = 1,
  kInvalid = 2,
  kInconclusive = 3,
};

/// Entry point of the `natt` tool. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace natt::cli
