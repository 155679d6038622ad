#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace advk {

// Full command-line driver, stream-parameterized so tests can run it
// in-process. Returns the process exit code: 0 success, 1 domain error,
// 2 usage error.
int run_cli(std::vector<std::string> args, std::ostream& out,
            std::ostream& err);

}  // namespace advk
