#pragma once

namespace herdsim::cli {

/// Entry point behind the `herdsim` binary: subcommands simulate, diagnose,
/// optimize. Exit codes: 0 success, 1 configuration error, 2 runtime abort,
/// 3 diagnostic failure (diagnose only).
int run(int argc, const char* const* argv);

}  // namespace herdsim::cli
