#pragma once

namespace mirrorsim {

// Command-line entry point (subcommands: sweep, pullin, shape, check).
// Returns the process exit code: 0 success, 2 config/usage error,
// 3 convergence or self-check failure, 4 contact / pull-in reached at the
// requested operating point.
int cli_main(int argc, const char* const* argv);

}  // namespace mirrorsim
