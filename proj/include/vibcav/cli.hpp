#pragma once

#include <iosfwd>

namespace vibcav::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitArgument = 2;
inline constexpr int kExitComputation = 3;

/// Name of the environment variable holding the default relative tolerance.
inline constexpr const char* kRelTolEnv = "VIBCAV_REL_TOL";

/// Runs one command line. Results go to `out` (or to --output), warnings and
/// the one-line error report to `err`. Returns 0 on success, 2 on argument
/// errors and 3 on computation errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vibcav::cli
