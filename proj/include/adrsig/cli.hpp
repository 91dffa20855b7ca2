#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace adrsig::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;

/// Runs `adr-signal <command> ...`. `args` excludes the program name.
/// Human-readable summaries go to `out`, diagnostics to `err`; every result
/// is written as files under the command's --out directory.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Up to `limit` candidates closest to `query` by edit distance, ties in
/// lexical order.
std::vector<std::string> nearest(const std::string& query, const std::vector<std::string>& candidates,
                                 std::size_t limit = 3);

}  // namespace adrsig::cli
