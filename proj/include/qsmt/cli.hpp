#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qsmt {

namespace exit_code {
inline constexpr int ok = 0;          // SAT, PASS, or a command that succeeded
inline constexpr int parse = 2;       // malformed input, usage or I/O error
inline constexpr int budget = 3;      // enumeration, planning or dense-limit failure
inline constexpr int verify_fail = 4;
inline constexpr int unsat = 20;
} // namespace exit_code

/// Entry point shared by the qsmt binary and the tests. `args` excludes argv[0].
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace qsmt
