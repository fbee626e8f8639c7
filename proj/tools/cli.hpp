#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace radconc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command line (without the program name). Results go to `out`,
/// diagnostics and usage text for errors to `err`. Returns 0 on success, 2 for
/// malformed or out-of-domain input and 1 when a verification or certification
/// check fails.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace radconc::cli
