#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "symwcet/cfg.hpp"
#include "symwcet/cft.hpp"
#include "symwcet/loops.hpp"

namespace symwcet {

using Path = std::vector<std::string>;
using PathSet = std::set<Path>;

struct PathBudget {
  std::size_t max_paths = 1'000'000;
  std::size_t max_nodes = 10'000'000;
};

/// Entry-to-`end` paths of `g` where every loop takes at most x_h back-edges
/// per entry. `end` defaults to the CFG exit. Loop bounds must be concrete.
PathSet gpaths_bounded(const Cfg& g, const LoopForest& f, std::optional<BlockIndex> end = std::nullopt,
                       const PathBudget& budget = {});

/// Tree execution paths. Loops run 0..n body iterations (exactly n with
/// `exact`), filtered by the annotations of the body that refer to the loop.
PathSet tpaths(const Cft& t, bool exact = false, const PathBudget& budget = {});

/// Occurrences of members of `patterns` inside `p`: non-overlapping,
/// left to right, per member, summed. Empty members never occur.
std::size_t occ(const PathSet& patterns, const Path& p);

/// Concatenations of n tree paths, keeping those where every annotation of
/// `t` whose loop is outside `t` holds at most e·m times.
PathSet prep(const Cft& t, std::size_t e, std::size_t n, const PathBudget& budget = {});

/// max over prep(t, e, n) of the path WCET (branch and bound), nullopt when
/// prep is empty. Leaf WCETs must be concrete.
std::optional<Cycles> prep_max_wcet(const Cft& t, std::size_t e, std::size_t n, const PathBudget& budget = {});

/// max over tpaths(t, exact) of the path WCET, nullopt when there is no path.
/// Paths are grouped by WCET and annotated-leaf occurrence counts, which
/// keeps nested loops tractable; explicit paths otherwise.
std::optional<Cycles> max_path_wcet(const Cft& t, bool exact = false, const PathBudget& budget = {});

/// Sum of leaf WCETs along `p`, looked up by label in `t`.
Cycles path_wcet(const Cft& t, const Path& p);

struct InclusionReport {
  bool ok = true;
  std::size_t cfg_paths = 0;
  std::size_t tree_paths = 0;
  std::optional<Path> counterexample;
};

/// Every bounded CFG path appears in tpaths(t) once tree labels are mapped
/// back to their origin blocks. `t` should be free of annotations and splits.
InclusionReport check_path_inclusion(const Cfg& g, const LoopForest& f, const Cft& t, const PathBudget& budget = {});

struct SoundnessViolation {
  std::string subtree;   // S-expression (renamed labels)
  std::size_t e = 0;
  std::size_t n = 0;
  Cycles path_wcet = 0;
  Cycles bound = 0;
};

struct SoundnessReport {
  bool ok = true;
  Cycles computed = 0;          // γ(t).η[0]
  Cycles exact = 0;             // max WCET over prep(t, 1, 1)
  double pessimism_percent = 0; // (computed - exact) / exact
  std::size_t subtrees_checked = 0;
  std::vector<SoundnessViolation> violations;
};

/// Root WCET bound against the exact maximum, and the predicate V on every subtree for
/// e ∈ {1, 2}, n ∈ {e, 2e}.
SoundnessReport check_soundness(const Cft& t, const LoopLattice& lat, const PathBudget& budget = {});
SoundnessReport check_soundness(const Cft& t, const PathBudget& budget = {});

}  // namespace symwcet
