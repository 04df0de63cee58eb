#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pcfcert::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

/// Parses argv (argv[0] is the program name), runs the command, writes the
/// report to `out` and progress or usage text to `err`. Returns the exit code.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace pcfcert::cli
