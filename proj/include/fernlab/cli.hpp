#pragma once

#include <iosfwd>

namespace fernlab {

// Runs one command line; returns the process exit code
// (0 ok, 1 verification failure, 2 user error, 3 resource ceiling).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fernlab
