#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace spart::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitTruncated = 3;

// Runs one command line (without the program name). Output goes to `out`,
// diagnostics to `err`; the return value is the process exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spart::cli
