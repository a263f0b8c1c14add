#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace caustic {

/// Exit codes: 0 success, 1 input or validation error, 2 numeric or I/O
/// failure, 3 a verification check failed.
enum ExitCode { kExitOk = 0, kExitInput = 1, kExitNumeric = 2, kExitVerification = 3 };

/// Runs one `caustic` command; args exclude the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace caustic
