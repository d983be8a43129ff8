#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace omega::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitDomain = 3;
inline constexpr int kExitClaimFailed = 4;

/// Runs one command line (without the program name).  Reads the default
/// config file named by OMEGA_CONFIG, if set.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace omega::cli
