#pragma once

#include <ostream>

namespace rrm {

enum ExitCode : int { kExitOk = 0, kExitUsage = 2, kExitData = 3, kExitCap = 4 };

/// The `rrm` command line: gen, distance, match, flow, plateau, converge,
/// bench. Records go to `out` (or --out), diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rrm
