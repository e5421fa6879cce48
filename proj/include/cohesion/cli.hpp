#pragma once

namespace cohesion {

// Entry point of the `cohesion` command line tool.  Returns the process exit
// code: 0 on success, 1 on bad input or failed verification checks.
int run_cli(int argc, const char* const* argv);

}  // namespace cohesion
