#pragma once
// Command-line front end. Kept out of main() so tests can drive it.

#include <iosfwd>
#include <string>
#include <vector>

namespace smm {

// Exit codes: 0 ok/match, 2 fault, 3 mismatch, 64 usage error, 66 file error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFault = 2;
inline constexpr int kExitMismatch = 3;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitFile = 66;

// `args` excludes the program name.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace smm
