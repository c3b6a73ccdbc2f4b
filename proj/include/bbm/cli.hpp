#pragma once

#include <ostream>

namespace bbm {

/// Exit codes of cli_main.
enum ExitCode : int {
  kExitPass = 0,
  kExitFail = 1,    // a verdict failed
  kExitUsage = 2,   // bad flags, presets, config or parameters
  kExitRuntime = 3  // sampling or other runtime failures
};

/// The bbmlab command line. Results go to `out` (or to --out), diagnostics
/// to `err`.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bbm
