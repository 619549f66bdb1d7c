#pragma once

#include <string>
#include <vector>

namespace wps::cli {

/// Full command-line entry point (argv[0] is the program name). Returns
/// the process exit code: 0 success, 1 input or usage error, 2
/// verification failure.
int run(int argc, const char* const* argv);

/// In-process convenience overload; args exclude the program name.
int run(const std::vector<std::string>& args);

}  // namespace wps::cli
