#pragma once

#include <iosfwd>

#include "qrefine/linalg.hpp"

namespace qrefine {

/// Process exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitInput = 2,       // unreadable file, malformed document, bad flag
  kExitSolver = 3,      // singular system, sampler failure
  kExitAssertion = 4,   // a reproduction checkpoint missed its bound
};

/// Entry point behind the `qrefine` binary; subcommands solve,
/// repro-table1 and qubo-dump.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// The irrational 2x2 benchmark: [[sqrt2, -sqrt3], [sqrt5, sqrt7]] with the
/// right-hand side of x = (1024 pi, -32 e), all in double arithmetic.
LinearSystem irrational_benchmark_system();
Vector irrational_benchmark_truth();

}  // namespace qrefine
