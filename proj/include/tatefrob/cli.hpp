#pragma once

namespace tatefrob::cli {

// Full command-line entry point: parses argv, runs one subcommand, prints a
// single JSON document to stdout. Returns the process exit code: 0 success,
// 1 domain error (JSON error object), 2 usage error (JSON error object).
int run(int argc, char** argv);

}  // namespace tatefrob::cli
