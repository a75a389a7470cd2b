#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace specrig::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitNumerical = 3;

/// Runs one subcommand; args excludes the program name. Results go to `out`
/// (or to files under --out), diagnostics to `err`.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace specrig::cli
