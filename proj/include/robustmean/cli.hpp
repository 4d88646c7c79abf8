#pragma once

#include <string>
#include <vector>

namespace robustmean {

// Exit codes: 0 success, 1 validation error, 2 numeric failure,
// 3 a verification verdict of violated_beyond_mc_error.
int run_cli(const std::vector<std::string>& args);
int run_cli(int argc, const char* const* argv);

}  // namespace robustmean
