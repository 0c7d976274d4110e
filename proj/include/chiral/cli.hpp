#pragma once

#include <string>
#include <vector>

namespace chiral::cli {

// Executes one command-line invocation. Returns the process exit status:
// 0 on success, 2 when argument validation or a compute precondition fails,
// 3 on I/O failure.
int run(int argc, const char* const* argv);

// Convenience overload for in-process invocation (tests).
int run(const std::vector<std::string>& args);

}  // namespace chiral::cli
