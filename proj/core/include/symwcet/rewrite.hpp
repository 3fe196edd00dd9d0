#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include "symwcet/formula.hpp"

namespace symwcet {

inline constexpr std::size_t kDefaultFuel = 10000;

/// Rewrite budget: $SYMWCET_FUEL when set to a positive integer, else 10000.
std::size_t default_fuel();

/// Every single-step rewrite of `w` at its root, in a fixed rule order.
/// Constant folding needs the lattice for loop meets; folds that would raise
/// (unknown or incomparable loops, zero bounds) are not offered.
std::vector<Formula> root_rewrites(const Formula& w, const LoopLattice& lat);

/// True when no rule applies anywhere in `w`.
bool is_normal(const Formula& w, const LoopLattice& lat);

/// True when every value of `w` is a constant sequence, whatever its identifiers
/// are bound to (used to guard factoring under max).
bool is_flat(const Formula& w);

struct SimplifyStats {
  std::size_t steps = 0;
};

/// Normal form by bottom-up rewriting. Throws FuelExhausted past `fuel` steps.
Formula simplify(const Formula& w, const LoopLattice& lat, std::size_t fuel = default_fuel(),
                 SimplifyStats* stats = nullptr);

/// Normal form by repeatedly applying a uniformly chosen redex anywhere in the
/// term. Used to check that the result does not depend on the schedule.
Formula simplify_random(const Formula& w, const LoopLattice& lat, std::mt19937_64& rng,
                        std::size_t fuel = default_fuel(), SimplifyStats* stats = nullptr);

}  // namespace symwcet
