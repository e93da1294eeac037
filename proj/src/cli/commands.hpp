#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace egeo::cli {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kNegative = 1;  // valid report, negative verdict
inline constexpr int kUsage = 2;     // bad flags or unreadable input

/// Runs `egeo <args...>` (program name excluded): writes the JSON report to
/// `out`, diagnostics to `err`, returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace egeo::cli
