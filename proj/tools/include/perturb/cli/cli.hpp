#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace perturb::cli {

/// Process exit codes.
enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 1,   // unparsable expression or bad command line
  kDomainError = 2,  // mathematically invalid request
  kOracleFailed = 3  // numeric verification failed or was inconclusive
};

/// Runs one command; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace perturb::cli
