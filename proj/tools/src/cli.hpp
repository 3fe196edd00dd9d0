#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "symwcet/error.hpp"

namespace symwcet::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,      // bad arguments, unreadable or invalid input
  kRefused = 2,    // the analysis does not apply (irreducible CFG, ...)
  kBudget = 3,     // path budget or rewrite fuel exhausted
  kUnsound = 4,    // a self-check or oracle check failed
};

int exit_code(ErrorKind kind);

/// Runs `symwcet <command> ...` with `args` excluding the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace symwcet::cli
