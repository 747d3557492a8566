#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fgf::cli {

/// Exit statuses of the fgf tool.
enum ExitCode : int {
  kOk = 0,
  kValidationFailure = 1,  ///< bad parameters, failed verification checks
  kNumericalFailure = 2,   ///< non-PSD covariance, non-finite values, corrupt artifacts
  kUsage = 64,             ///< unknown flags or subcommands (sysexits EX_USAGE)
};

/// Runs one subcommand; args excludes the program name. Reports go to `out`
/// as JSON, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fgf::cli
