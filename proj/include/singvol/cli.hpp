#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace singvol::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitMalformed = 2;
inline constexpr int kExitDomain = 3;
inline constexpr int kExitUnsupported = 4;

/// Runs the command line; results go to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace singvol::cli
