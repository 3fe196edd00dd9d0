#pragma once

#include <cstddef>
#include <limits>
#include <vector>

namespace symwcet {

inline constexpr std::size_t kNoNode = std::numeric_limits<std::size_t>::max();

using Adjacency = std::vector<std::vector<std::size_t>>;

/// Reverse postorder of the nodes reachable from `root`.
std::vector<std::size_t> reverse_postorder(const Adjacency& succ, std::size_t root);

/// Immediate dominators by the iterative reverse-postorder fixpoint of
/// Cooper, Harvey and Kennedy. idom[root] == root; unreachable nodes get kNoNode.
std::vector<std::size_t> immediate_dominators(const Adjacency& succ, const Adjacency& pred, std::size_t root);

/// True iff `a` dominates `b` according to an idom vector (reflexive).
bool dominates(const std::vector<std::size_t>& idom, std::size_t a, std::size_t b);

}  // namespace symwcet
