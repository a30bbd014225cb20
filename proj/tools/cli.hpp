#pragma once

#include <ostream>

namespace fuknagaev::cli {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitVerificationFailure = 1;
inline constexpr int kExitValidationError = 2;

/// Parses argv, dispatches one subcommand and returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fuknagaev::cli
