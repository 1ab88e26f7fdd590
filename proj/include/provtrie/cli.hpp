#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace provtrie {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsage = 2;

inline constexpr const char* kPredicateMapEnv = "PROVTRIE_PREDICATE_MAP";

// Runs one `provtrie` invocation. args excludes the program name; "-" as an
// input file reads from `in`.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace provtrie
