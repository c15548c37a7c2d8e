#pragma once

#include <string>
#include <vector>

namespace ednce::cli {

// Entry point shared by main() and the tests. args excludes the program
// name. Returns the process exit code: 0 ok, 2 input error, 3 budget or
// infeasible, 4 internal invariant violation.
int run(const std::vector<std::string> &args);

}  // namespace ednce::cli
