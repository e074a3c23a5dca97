#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace flowcouple::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitNegative = 2;  // valid output, verdict false or infeasible

// `args` excludes the program name. JSON results go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace flowcouple::cli
