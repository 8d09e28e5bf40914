#pragma once

#include <ostream>

namespace ontoekg::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitPipelineError = 1,
  kExitStrictFailure = 2,
  kExitUsageError = 3,
};

/// Entry point shared by the ontoekg binary and the tests. Data goes to
/// `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ontoekg::cli
