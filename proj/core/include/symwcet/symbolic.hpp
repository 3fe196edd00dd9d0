#pragma once

#include "symwcet/cft.hpp"
#include "symwcet/formula.hpp"
#include "symwcet/rewrite.hpp"

namespace symwcet {

/// WCET formula of a tree that may hold symbolic block WCETs, loop bounds and
/// annotation maxima. With `fold`, subtrees without identifiers are evaluated
/// eagerly into constants; without it every node maps to one operator.
Formula gamma_symbolic(const Cft& t, const LoopLattice& lat, bool fold = true);
Formula gamma_symbolic(const Cft& t, bool fold = true);

}  // namespace symwcet
