// cli.hpp
// Command-line front end: iterate, cycles, oracle-check, forward, backward.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lattes::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitCapExceeded = 2;
inline constexpr int kExitCheckFailed = 3;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lattes::cli
