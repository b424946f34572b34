#ifndef PROBCHECK_CLI_HPP
#define PROBCHECK_CLI_HPP

#include <iosfwd>

namespace probcheck {

inline constexpr const char* kToolVersion = "0.1.0";

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitParseError = 1;
inline constexpr int kExitSpaceTooLarge = 2;
inline constexpr int kExitInternalMismatch = 3;
inline constexpr int kExitConsistencyFailure = 4;

// Full CLI entry point; the binary's main() is a thin wrapper so tests
// can drive commands in-process with captured streams.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace probcheck

#endif  // PROBCHECK_CLI_HPP
