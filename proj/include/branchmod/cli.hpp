#pragma once

// Command-line front end. Exit codes: 0 success, 1 cross-check failure,
// 2 usage error, 3 invalid class or input.

#include <iosfwd>
#include <string>
#include <vector>

namespace branchmod {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCrossCheck = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitValidation = 3;

// `args` excludes the program name.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace branchmod
