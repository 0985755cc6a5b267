#pragma once

#include <iosfwd>

namespace fsel::app {

// Full command-line entry point. Returns the process exit status:
// 0 when a result document was written, 1 on a run failure (an error
// document is still written), 2 on usage or validation errors.
int runCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fsel::app
