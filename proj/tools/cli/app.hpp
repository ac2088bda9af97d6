#pragma once

#include <iosfwd>

namespace semtrack::cli {

// Full command-line entry point. Exit codes: 0 success, 1 unexpected
// failure, 2 invalid input, 3 degenerate model or undefined quantity.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace semtrack::cli
