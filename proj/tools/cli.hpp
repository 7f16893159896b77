#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qmv {

// Entry point of the qmv tool, separated from main() so the argument
// handling and output formats are testable in-process.  Returns the process
// exit code: 0 pass/equal, 1 detect/fail, 2 usage or internal error.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

} // namespace qmv
