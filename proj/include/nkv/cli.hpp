#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace nkv {

inline constexpr const char* kToolVersion = "1.0.0";

// args without the program name. JSON on out, table and diagnostics on err.
// Exit codes: 0 pass, 1 check failure, 2 input error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nkv
