#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dagcover::cli {

enum ExitCode : int {
  kOk = 0,
  kInvalidInput = 2,
  kSizeLimit = 3,
  kPartial = 4,  // censored or bounds-only result
};

/// Runs one command line (without the program name). Results go to `out`,
/// diagnostics to `err`; "-" as a path reads `in`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in);

}  // namespace dagcover::cli
