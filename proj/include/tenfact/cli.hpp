#pragma once

// Command-line front end. Exit codes: 0 ok, 1 negative verdict, 2 input or
// validation error, 3 resource limit.

#include <ostream>
#include <string>
#include <vector>

namespace tenfact {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitResource = 3;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tenfact
