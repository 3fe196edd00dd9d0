#pragma once

#include <optional>
#include <string>

#include "symwcet/cft.hpp"
#include "symwcet/formula.hpp"
#include "symwcet/loops.hpp"
#include "symwcet/program.hpp"
#include "symwcet/restructure.hpp"
#include "symwcet/rewrite.hpp"

namespace symwcet {

/// Everything derived from a program document before formula construction.
struct Analysis {
  LoopForest forest;
  /// Tree straight out of restructuring: no splits, no annotations.
  Restructured base;
  /// `base` with splits applied, then annotations in document order.
  Cft tree;
  LoopLattice lattice;
};

/// Replaces identifiers bound to integers in block WCETs, loop bounds,
/// annotation maxima and variant WCETs. Other bindings are ignored.
Program instantiate(const Program& p, const Bindings& rho);

/// Loop detection, restructuring, splitting and annotation.
/// Throws IrreducibleLoop, UnknownBlock, AmbiguousTarget, NonAncestorLoop, ...
Analysis analyze(const Program& p);

/// One operator per tree node, no constant folding.
Formula raw_formula(const Analysis& a);

struct FormulaResult {
  Formula raw;
  Formula simplified;
  std::size_t steps = 0;
};

FormulaResult build_formula(const Analysis& a, std::size_t fuel = default_fuel());

}  // namespace symwcet
