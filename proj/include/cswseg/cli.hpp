#pragma once

#include <ostream>

namespace cswseg
{

  // Runs the command line and returns the process exit code. Data goes to
  // `out`, diagnostics to `err`.
  int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}
