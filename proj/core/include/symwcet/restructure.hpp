#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "symwcet/cfg.hpp"
#include "symwcet/cft.hpp"
#include "symwcet/graph.hpp"
#include "symwcet/loops.hpp"

namespace symwcet {

struct DagNode {
  enum class Kind { Block, Loop, Next, Exit };
  Kind kind;
  BlockIndex block = 0;              // the block, or the header of a hierarchical node
  std::optional<std::size_t> loop;   // forest index for hierarchical nodes
  std::string label;                 // block id, "L_<header>", "next" or "exit"

  bool is_virtual() const { return kind == Kind::Next || kind == Kind::Exit; }
};

/// Acyclic body of one loop (or of the whole program for ⊤) in which directly
/// nested loops are collapsed into hierarchical nodes.
struct Dag {
  std::vector<DagNode> nodes;
  Adjacency succ;
  Adjacency pred;
  std::size_t start = 0;
  std::size_t next = 0;
  std::size_t exit = 0;
  std::vector<std::size_t> idom;     // dominator tree rooted at `start`

  std::size_t size() const { return nodes.size(); }
  const std::string& label(std::size_t n) const { return nodes[n].label; }
  std::optional<std::size_t> find(const std::string& label) const;
  bool has_edge(std::size_t u, std::size_t v) const;
};

/// Loop to DAG. `loop == nullopt` builds the DAG of ⊤ (the whole CFG), where
/// the CFG exit block flows into the virtual exit node.
Dag loop_to_dag(const Cfg& g, const LoopForest& f, std::optional<std::size_t> loop);

/// {n | start dom n ∧ n dom end} \ {start}, outermost first.
std::vector<std::size_t> forced_passage(const Dag& d, std::size_t end, std::optional<std::size_t> start = std::nullopt);

struct Restructured {
  Cft tree;
  /// Origin block id → leaf labels produced for it (first is the id itself).
  std::map<std::string, std::vector<std::string>> renames;
};

/// DAG to control-flow tree for the paths from `start` to `end` in `d`,
/// expanding hierarchical nodes recursively. Labels are not yet unique.
Cft dag_to_cft(const Dag& d, std::size_t start, std::size_t end, const Cfg& g, const LoopForest& f);

/// Makes every leaf label (and every loop label) unique: the first preorder
/// occurrence keeps its id, later ones become "id#k".
Restructured rename_duplicates(const Cft& t);

/// Whole-program CFT. Loops without a bound get the symbolic bound "x_<header>".
Restructured build_cft(const Cfg& g, const LoopForest& f);

}  // namespace symwcet
