#pragma once

#include <iosfwd>

namespace scargeo::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

/// Runs one `scargeo <subcommand> ...` invocation. JSON goes to `out`,
/// diagnostics to `err`. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace scargeo::cli
