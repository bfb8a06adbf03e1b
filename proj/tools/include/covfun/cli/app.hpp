#pragma once

#include <iosfwd>

namespace covfun::cli {

// Exit codes: 0 Covered, 1 Uncovered, 2 Unknown; usage and I/O errors >= 3.
inline constexpr int kExitUsage = 3;
inline constexpr int kExitFailure = 4;

// Runs one covfun command. The JSON report goes to `out` (unless --quiet),
// diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace covfun::cli
