#pragma once

#include <ostream>

namespace fanband {

// Runs one CLI invocation. Returns 0 on success, 1 when a verification fails
// and 2 on malformed input or arguments.
int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fanband
