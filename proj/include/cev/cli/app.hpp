#pragma once

#include <iosfwd>

namespace cev {

// Entry point of the command-line tool. Returns 0 on success, 1 for input
// errors and 2 for numerical failures.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cev
