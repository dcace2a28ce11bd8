#pragma once

#include <ostream>

namespace bcs {

// Full command-line entry point, parameterized over the output streams so
// tests can run it in-process. Returns the process exit code:
//   0  success
//   1  unsatisfiable input or a failed verify check (reported, not an error)
//   2  usage or parse errors
//   3  solve timeout
int cli_main(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err);

}  // namespace bcs
