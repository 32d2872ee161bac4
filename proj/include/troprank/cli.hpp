#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace troprank::cli {

inline constexpr int kExitYes = 0;
inline constexpr int kExitNo = 1;
inline constexpr int kExitError = 2;

/// Runs one command. `args` excludes the program name.
/// Returns 0 for a positive verdict or a finished construction, 1 for a
/// negative verdict, 2 for any error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace troprank::cli
