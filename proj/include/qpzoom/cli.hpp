#pragma once

#include <ostream>

namespace qpzoom::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kOk = 0,
  kIoError = 1,
  kInvalidArgument = 2,
  kInternalError = 3,
};

/// Entry point for the `qpzoom` tool (subcommands: resize, map-box, stats,
/// bench). Errors are reported on `err` as {"error": ..., "code": ...}.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qpzoom::cli
