#pragma once

// The hk command line. run() never throws: errors are printed to err and
// mapped to the exit codes 2 (parse), 3 (precondition), 4 (resource) and
// 5 (internal).

#include <ostream>
#include <string>
#include <vector>

namespace hk::cli {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace hk::cli
