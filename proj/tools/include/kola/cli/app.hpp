#pragma once

#include <iosfwd>

namespace kola::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_error = 1,
  exit_invalid = 2,
  exit_incomplete = 3,
};

/// Runs one `kola` invocation. Results go to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kola::cli
