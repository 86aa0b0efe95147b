#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace svl::cli {

enum ExitCode : int {
  kOk = 0,
  kArgumentError = 2,
  kDomainError = 3,
  kUnconverged = 4,
};

// Runs one command. `args` excludes the program name. Results go to `out`
// (or to --output), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace svl::cli
