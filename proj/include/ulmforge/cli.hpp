#pragma once

#include <iosfwd>

namespace ulmforge {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kExitOk = 0,        ///< success, model, isomorphic, formula true, all checks pass
  kExitNegative = 1,  ///< non-model, not isomorphic, formula false, a check failed
  kExitParse = 2,     ///< an input file did not parse
  kExitUsage = 3,     ///< bad arguments, unreadable file, or a precondition failed
};

/// Subcommands: check, ulm, iso, encode, decode, reduce, eval, verify,
/// selftest, gen. argv[0] is the program name.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ulmforge
