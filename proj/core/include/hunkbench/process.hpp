#pragma once

#include <string>
#include <vector>

namespace hunkbench {

struct ProcessResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

/// Runs `argv[0]` (looked up on PATH) with the given arguments, feeding
/// `input` to its stdin and capturing stdout/stderr. Throws ToolUnavailable
/// if the program cannot be started.
ProcessResult run_process(const std::vector<std::string>& argv, const std::string& input = {});

}  // namespace hunkbench
