#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "symwcet/graph.hpp"
#include "symwcet/param.hpp"

namespace symwcet {

using BlockIndex = std::size_t;

struct Block {
  std::string id;
  Param wcet;

  friend bool operator==(const Block&, const Block&) = default;
};

using EdgeIds = std::pair<std::string, std::string>;
using Edge = std::pair<BlockIndex, BlockIndex>;

/// A validated control-flow graph with a single entry and a single exit.
///
/// The entry may carry incoming edges only when it heads a loop (every edge
/// into the entry is a back-edge, since the entry dominates every block).
/// Duplicate edges are merged. Blocks and edges keep document order.
class Cfg {
 public:
  Cfg(std::vector<Block> blocks, const std::vector<EdgeIds>& edges, const std::string& entry,
      const std::string& exit);

  std::size_t size() const { return blocks_.size(); }
  const Block& block(BlockIndex i) const { return blocks_[i]; }
  const std::vector<Block>& blocks() const { return blocks_; }
  const std::string& id(BlockIndex i) const { return blocks_[i].id; }

  std::optional<BlockIndex> find(const std::string& id) const;
  /// Throws UnknownBlock when absent.
  BlockIndex index(const std::string& id) const;

  const std::vector<BlockIndex>& successors(BlockIndex i) const { return succ_[i]; }
  const std::vector<BlockIndex>& predecessors(BlockIndex i) const { return pred_[i]; }
  const Adjacency& successor_lists() const { return succ_; }
  const Adjacency& predecessor_lists() const { return pred_; }
  const std::vector<Edge>& edges() const { return edges_; }

  BlockIndex entry() const { return entry_; }
  BlockIndex exit() const { return exit_; }

  friend bool operator==(const Cfg& a, const Cfg& b);

 private:
  std::vector<Block> blocks_;
  std::unordered_map<std::string, BlockIndex> index_;
  std::vector<Edge> edges_;
  Adjacency succ_;
  Adjacency pred_;
  BlockIndex entry_ = 0;
  BlockIndex exit_ = 0;
};

/// Immediate dominator of every block; the entry maps to nullopt.
std::vector<std::optional<BlockIndex>> block_idoms(const Cfg& g);

/// Immediate dominators keyed by block id. The entry has no entry in the map.
std::map<std::string, std::string> dominators(const Cfg& g);

}  // namespace symwcet
