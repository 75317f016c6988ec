#pragma once

#include <iosfwd>

namespace perdec::cli {

// Parses argv, runs one command, writes its outputs and manifest.json.
// Returns the process exit code: 0 pass, 1 error or failed check, 2
// inconclusive.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace perdec::cli
