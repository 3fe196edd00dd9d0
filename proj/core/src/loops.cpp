#include "symwcet/loops.hpp"

#include <algorithm>
#include <deque>

#include "symwcet/error.hpp"

namespace symwcet {

LoopRef LoopRef::parse(const std::string& text) {
  if (text == "TOP") return top();
  if (text == "BOTTOM") return bottom();
  return loop(text);
}

std::string LoopRef::to_string() const {
  switch (kind_) {
    case Kind::Top: return "TOP";
    case Kind::Bottom: return "BOTTOM";
    case Kind::Loop: return label_;
  }
  return label_;
}

// ---------------------------------------------------------------------------
// LoopLattice

void LoopLattice::add(const std::string& label, std::optional<std::string> parent) {
  parent_[label] = std::move(parent);
}

std::optional<std::string> LoopLattice::parent(const std::string& label) const {
  const auto it = parent_.find(label);
  if (it == parent_.end()) fail(ErrorKind::UnknownLoop, "unknown loop '" + label + "'");
  return it->second;
}

std::vector<std::string> LoopLattice::labels() const {
  std::vector<std::string> out;
  out.reserve(parent_.size());
  for (const auto& [k, v] : parent_) out.push_back(k);
  return out;
}

void LoopLattice::check(const LoopRef& r) const {
  if (r.is_loop() && !contains(r.label())) fail(ErrorKind::UnknownLoop, "unknown loop '" + r.label() + "'");
}

bool LoopLattice::is_ancestor(const std::string& anc, std::string label) const {
  for (;;) {
    if (label == anc) return true;
    auto up = parent(label);
    if (!up) return false;
    label = std::move(*up);
  }
}

bool LoopLattice::leq(const LoopRef& a, const LoopRef& b) const {
  check(a);
  check(b);
  if (a.is_bottom() || b.is_top()) return true;
  if (a.is_top() || b.is_bottom()) return false;
  return is_ancestor(b.label(), a.label());
}

LoopRef LoopLattice::meet(const LoopRef& a, const LoopRef& b) const {
  if (leq(a, b)) return a;
  if (leq(b, a)) return b;
  return LoopRef::bottom();
}

LoopRef LoopLattice::join(const LoopRef& a, const LoopRef& b) const {
  if (leq(a, b)) return b;
  if (leq(b, a)) return a;
  // Both are distinct loops here; walk a's ancestors to the first that contains b.
  std::optional<std::string> up = parent(a.label());
  while (up) {
    if (is_ancestor(*up, b.label())) return LoopRef::loop(*up);
    up = parent(*up);
  }
  return LoopRef::top();
}

LoopRef loop_meet(const LoopRef& a, const LoopRef& b, const LoopLattice& lattice) { return lattice.meet(a, b); }
LoopRef loop_join(const LoopRef& a, const LoopRef& b, const LoopLattice& lattice) { return lattice.join(a, b); }

// ---------------------------------------------------------------------------
// LoopForest

bool LoopInfo::contains(BlockIndex b) const { return std::binary_search(body.begin(), body.end(), b); }

LoopForest::LoopForest(const Cfg& g, std::vector<LoopInfo> loops)
    : loops_(std::move(loops)), innermost_(g.size()) {
  for (std::size_t i = 0; i < loops_.size(); ++i) by_header_[loops_[i].header] = i;
  for (std::size_t i = 0; i < loops_.size(); ++i) {
    std::optional<std::string> parent;
    if (loops_[i].parent) parent = g.id(loops_[loops_[i].parent.value()].header);
    lattice_.add(g.id(loops_[i].header), parent);
    for (BlockIndex b : loops_[i].body) {
      auto& cur = innermost_[b];
      if (!cur || loops_[*cur].body.size() > loops_[i].body.size()) cur = i;
    }
  }
}

std::optional<std::size_t> LoopForest::loop_of_header(BlockIndex h) const {
  const auto it = by_header_.find(h);
  if (it == by_header_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::size_t> LoopForest::children(std::optional<std::size_t> outer) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < loops_.size(); ++i) {
    if (loops_[i].parent == outer) out.push_back(i);
  }
  return out;
}

namespace {

// Nodes reachable from `sources` following `adj`, never traversing an edge in `banned`.
std::vector<char> reach(const Adjacency& adj, const std::vector<BlockIndex>& sources,
                        const std::vector<Edge>& banned, bool reversed) {
  std::vector<char> seen(adj.size(), 0);
  std::deque<BlockIndex> work;
  for (auto s : sources) {
    if (!seen[s]) {
      seen[s] = 1;
      work.push_back(s);
    }
  }
  while (!work.empty()) {
    const auto n = work.front();
    work.pop_front();
    for (auto m : adj[n]) {
      const Edge e = reversed ? Edge{m, n} : Edge{n, m};
      if (std::find(banned.begin(), banned.end(), e) != banned.end()) continue;
      if (!seen[m]) {
        seen[m] = 1;
        work.push_back(m);
      }
    }
  }
  return seen;
}

void reject_irreducible(const Cfg& g, const std::vector<std::size_t>& idom) {
  // A CFG is reducible iff removing its dominator back-edges leaves it acyclic.
  std::vector<std::size_t> indeg(g.size(), 0);
  Adjacency forward(g.size());
  for (const auto& [u, v] : g.edges()) {
    if (dominates(idom, v, u)) continue;
    forward[u].push_back(v);
    ++indeg[v];
  }
  std::vector<BlockIndex> ready;
  for (BlockIndex i = 0; i < g.size(); ++i) {
    if (indeg[i] == 0) ready.push_back(i);
  }
  std::size_t visited = 0;
  while (!ready.empty()) {
    const auto n = ready.back();
    ready.pop_back();
    ++visited;
    for (auto m : forward[n]) {
      if (--indeg[m] == 0) ready.push_back(m);
    }
  }
  if (visited == g.size()) return;
  for (BlockIndex i = 0; i < g.size(); ++i) {
    if (indeg[i] != 0) {
      fail(ErrorKind::IrreducibleLoop,
           "irreducible loop: block '" + g.id(i) + "' lies on a cycle not entered through a dominating header");
    }
  }
}

}  // namespace

LoopForest build_loop_forest(const Cfg& g, const std::map<std::string, Param>& bounds) {
  const auto idom = immediate_dominators(g.successor_lists(), g.predecessor_lists(), g.entry());
  reject_irreducible(g, idom);

  std::vector<LoopInfo> loops;
  for (BlockIndex h = 0; h < g.size(); ++h) {
    LoopInfo info;
    info.header = h;
    for (auto p : g.predecessors(h)) {
      if (dominates(idom, h, p))
        info.back_edges.emplace_back(p, h);
      else
        info.entry_edges.emplace_back(p, h);
    }
    if (info.back_edges.empty()) continue;

    // body(h): nodes on a path that starts at h, ends with a back-edge of l_h
    // and uses no entry-edge of l_h.
    std::vector<BlockIndex> sources;
    for (const auto& e : info.back_edges) sources.push_back(e.first);
    const auto forward = reach(g.successor_lists(), {h}, info.entry_edges, false);
    const auto backward = reach(g.predecessor_lists(), sources, info.entry_edges, true);
    for (BlockIndex b = 0; b < g.size(); ++b) {
      if (forward[b] && backward[b]) info.body.push_back(b);
    }
    for (auto b : info.body) {
      for (auto s : g.successors(b)) {
        if (!info.contains(s)) info.exit_edges.emplace_back(b, s);
      }
    }
    if (auto it = bounds.find(g.id(h)); it != bounds.end()) info.bound = it->second;
    loops.push_back(std::move(info));
  }

  // Nesting: l' ⊑ l iff header(l') ∈ body(l); the parent is the smallest strict container.
  for (std::size_t i = 0; i < loops.size(); ++i) {
    for (std::size_t j = 0; j < loops.size(); ++j) {
      if (i == j || !loops[j].contains(loops[i].header)) continue;
      auto& parent = loops[i].parent;
      if (!parent || loops[*parent].body.size() > loops[j].body.size()) parent = j;
    }
  }
  for (std::size_t i = 0; i < loops.size(); ++i) {
    for (std::size_t j = i + 1; j < loops.size(); ++j) {
      const bool nested = loops[i].contains(loops[j].header) || loops[j].contains(loops[i].header);
      if (nested) continue;
      for (auto b : loops[i].body) {
        if (loops[j].contains(b))
          fail(ErrorKind::IrreducibleLoop, "loops '" + g.id(loops[i].header) + "' and '" + g.id(loops[j].header) +
                                               "' overlap without nesting");
      }
    }
  }
  for (const auto& [header, bound] : bounds) {
    const auto b = g.find(header);
    const bool is_header = b && std::any_of(loops.begin(), loops.end(), [&](const LoopInfo& l) { return l.header == *b; });
    if (!is_header) fail(ErrorKind::UnknownBlock, "loop bound given for '" + header + "', which is not a loop header");
  }
  return LoopForest(g, std::move(loops));
}

}  // namespace symwcet
