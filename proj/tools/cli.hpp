#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lipext::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitCapacity = 2;
inline constexpr int kExitInternal = 3;
inline constexpr int kExitUsage = 64;

// Runs one command line (without the program name; a leading "lipext" token
// is skipped). Summaries and reports go to `out`, diagnostics to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lipext::cli
