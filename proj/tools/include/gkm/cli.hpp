#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gkm::cli {

/// Exit codes of the gkmcoh tool.
enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kUsage = 2,
  kResource = 3,
};

/// Runs one invocation. args excludes the program name. Payloads go to out,
/// diagnostics and progress to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gkm::cli
