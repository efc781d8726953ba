#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rarburn::cli {

// Runs the command line `args` (without the program name). Returns the exit
// status: 0 on success, 2 on invalid input, 1 on any other failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rarburn::cli
