#pragma once

#include "fkmm/errors.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace fkmm {

// Process exit codes of the fkmm tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitInternal = 1,      // unexpected failure (I/O, bug)
    kExitUnsupported = 2,   // UnsupportedSpace, UnsupportedDimension
    kExitGapClosed = 3,     // GapClosed
    kExitNotAdmissible = 4, // NotAdmissible: refine the grid
    kExitTrs = 5,           // the model violates time reversal (verify, invariant)
    kExitUsage = 6,         // bad flags, model files, expressions or grid sizes
    kExitUndetermined = 7,  // invariant not defined or numerically inconsistent
};

int exit_code(Errc c);

// Runs the tool on argv[1..]. Data goes to out (or --out), diagnostics to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fkmm
