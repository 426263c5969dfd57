#pragma once

#include <string>
#include <vector>

namespace pzeta::cli {

struct RunResult {
    int code = 0;
    std::string out;
    std::string err;
};

// Exit codes: 0 success, 1 validation error, 2 cap/precision exhaustion,
// 3 mathematical-consistency failure.
RunResult run(const std::vector<std::string>& args);

}  // namespace pzeta::cli
