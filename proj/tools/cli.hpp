#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mvdyn::cli {

// Runs one command line (without the program name). Returns the exit code:
// 0 success, 1 domain error (or an invalid proof), 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mvdyn::cli
