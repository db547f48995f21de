#pragma once

#include <string>
#include <vector>

namespace possdiag::cli {

enum ExitCode : int {
  kSuccess = 0,
  kEmptyResult = 1,
  kValidationFailure = 2,
  kIoFailure = 3,
};

struct CommandOutcome {
  int exit_code = kSuccess;
  std::string out;
  std::string err;
};

/// Runs one command line. args[0] is the program name. Reports go to `out`
/// unless --output names a file; issues and usage text go to `err`.
CommandOutcome run(const std::vector<std::string>& args);

}  // namespace possdiag::cli
