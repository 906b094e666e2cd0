#pragma once

// Command-line frontend: every library capability exposed as a
// subcommand with machine-readable output.

#include <iosfwd>
#include <string>
#include <vector>

namespace fbmf {

// Dispatches the given arguments (program name excluded), writing
// results to `out` and diagnostics to `err`. Returns the process exit
// code: 0 on success, 1 on a module failure (single-line `error: ...`
// on `err`), 2 on a usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace fbmf
