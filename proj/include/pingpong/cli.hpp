#pragma once

#include <iosfwd>

namespace pingpong {

enum ExitCode : int {
  kExitSuccess = 0,         // certified, or demo success
  kExitRelationFound = 1,
  kExitInvalidInput = 2,
  kExitUndecided = 3,
};

/// Entry point of the pingpong command; the JSON report goes to `out`,
/// diagnostics to `err`. Returns the exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pingpong
