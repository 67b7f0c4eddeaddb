#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace strengthlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitResource = 3;

/// Runs one subcommand. args excludes the program name. Results go to out,
/// diagnostics to err; stdin is read only for --stdin.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace strengthlab::cli
