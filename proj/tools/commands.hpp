#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tricat::cli {

// Runs the command line `args` (without the program name). Exit codes:
// 0 pass, 1 usage, I/O or parse error, 2 violation, 3 undecided.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tricat::cli
