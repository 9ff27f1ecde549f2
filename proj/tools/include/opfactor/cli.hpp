#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace opfactor::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitVerify = 2;

/// Command-line driver. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace opfactor::cli
