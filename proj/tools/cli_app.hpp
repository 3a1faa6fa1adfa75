#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace trigmoment::cli {

// Exit codes shared by all commands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitNotSolvable = 2;
inline constexpr int kExitNecessaryFailed = 3;
inline constexpr int kExitNoCandidate = 4;
inline constexpr int kExitVerificationFailed = 5;

/// Runs one command. `args` excludes the program name. JSON goes to `out`
/// (or to --out), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace trigmoment::cli
