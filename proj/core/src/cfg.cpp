#include "symwcet/cfg.hpp"

#include <algorithm>
#include <set>

#include "symwcet/error.hpp"

namespace symwcet {

namespace {

void check_label(const std::string& id) {
  if (id.empty()) fail(ErrorKind::InvalidProgram, "empty block id");
  if (id == "TOP" || id == "BOTTOM") fail(ErrorKind::InvalidProgram, "block id '" + id + "' is reserved");
  if (id.find_first_of("#$()[]|, \t\n") != std::string::npos)
    fail(ErrorKind::InvalidProgram, "block id '" + id + "' contains a reserved character");
}

std::vector<char> reachable(const Adjacency& adj, std::size_t from) {
  std::vector<char> seen(adj.size(), 0);
  std::vector<std::size_t> work{from};
  seen[from] = 1;
  while (!work.empty()) {
    const auto n = work.back();
    work.pop_back();
    for (auto m : adj[n]) {
      if (!seen[m]) {
        seen[m] = 1;
        work.push_back(m);
      }
    }
  }
  return seen;
}

}  // namespace

Cfg::Cfg(std::vector<Block> blocks, const std::vector<EdgeIds>& edges, const std::string& entry,
         const std::string& exit)
    : blocks_(std::move(blocks)) {
  if (blocks_.empty()) fail(ErrorKind::InvalidProgram, "no entry node");
  for (BlockIndex i = 0; i < blocks_.size(); ++i) {
    check_label(blocks_[i].id);
    if (!index_.emplace(blocks_[i].id, i).second) fail(ErrorKind::DuplicateId, "duplicate block id '" + blocks_[i].id + "'");
  }
  succ_.resize(blocks_.size());
  pred_.resize(blocks_.size());
  std::set<Edge> seen;
  for (const auto& [from, to] : edges) {
    const Edge e{index(from), index(to)};
    if (!seen.insert(e).second) continue;
    edges_.push_back(e);
    succ_[e.first].push_back(e.second);
    pred_[e.second].push_back(e.first);
  }
  entry_ = index(entry);
  exit_ = index(exit);

  if (!succ_[exit_].empty()) fail(ErrorKind::InvalidProgram, "exit node '" + exit + "' has outgoing edges");
  for (BlockIndex i = 0; i < blocks_.size(); ++i) {
    if (i != entry_ && pred_[i].empty()) fail(ErrorKind::InvalidProgram, "multiple entry nodes: '" + id(i) + "' has no predecessor");
    if (i != exit_ && succ_[i].empty()) fail(ErrorKind::InvalidProgram, "multiple exit nodes: '" + id(i) + "' has no successor");
  }
  const auto from_entry = reachable(succ_, entry_);
  const auto to_exit = reachable(pred_, exit_);
  for (BlockIndex i = 0; i < blocks_.size(); ++i) {
    if (!from_entry[i]) fail(ErrorKind::InvalidProgram, "block '" + id(i) + "' is unreachable from the entry");
    if (!to_exit[i]) fail(ErrorKind::InvalidProgram, "exit is unreachable from block '" + id(i) + "'");
  }
}

std::optional<BlockIndex> Cfg::find(const std::string& id) const {
  const auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

BlockIndex Cfg::index(const std::string& id) const {
  if (auto i = find(id)) return *i;
  fail(ErrorKind::UnknownBlock, "unknown block '" + id + "'");
}

bool operator==(const Cfg& a, const Cfg& b) {
  if (a.blocks_ != b.blocks_ || a.entry_ != b.entry_ || a.exit_ != b.exit_) return false;
  auto sa = a.edges_;
  auto sb = b.edges_;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  return sa == sb;
}

std::vector<std::optional<BlockIndex>> block_idoms(const Cfg& g) {
  const auto idom = immediate_dominators(g.successor_lists(), g.predecessor_lists(), g.entry());
  std::vector<std::optional<BlockIndex>> out(g.size());
  for (BlockIndex i = 0; i < g.size(); ++i) {
    if (i != g.entry() && idom[i] != kNoNode) out[i] = idom[i];
  }
  return out;
}

std::map<std::string, std::string> dominators(const Cfg& g) {
  std::map<std::string, std::string> out;
  const auto idom = block_idoms(g);
  for (BlockIndex i = 0; i < g.size(); ++i) {
    if (idom[i]) out.emplace(g.id(i), g.id(*idom[i]));
  }
  return out;
}

}  // namespace symwcet
