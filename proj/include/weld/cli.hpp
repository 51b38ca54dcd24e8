#pragma once

// The `weld` command line, callable in-process for tests.

#include <iosfwd>
#include <string>
#include <vector>

namespace weld::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;  // validation failures, stale move instances
inline constexpr int kExitUsage = 2;   // bad flags, unreadable or unparsable input

/// `args` excludes the program name. Reads `-` paths from `in`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace weld::cli
