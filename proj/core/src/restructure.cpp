#include "symwcet/restructure.hpp"

#include <algorithm>
#include <functional>

#include "symwcet/error.hpp"

namespace symwcet {

std::optional<std::size_t> Dag::find(const std::string& label) const {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].label == label) return i;
  }
  return std::nullopt;
}

bool Dag::has_edge(std::size_t u, std::size_t v) const {
  return std::find(succ[u].begin(), succ[u].end(), v) != succ[u].end();
}

namespace {

bool contains(const LoopForest& f, std::optional<std::size_t> loop, BlockIndex b) {
  return !loop || f.loop(*loop).contains(b);
}

}  // namespace

Dag loop_to_dag(const Cfg& g, const LoopForest& f, std::optional<std::size_t> loop) {
  Dag d;
  std::vector<std::size_t> rep(g.size(), kNoNode);

  for (BlockIndex b = 0; b < g.size(); ++b) {
    if (contains(f, loop, b) && f.innermost(b) == loop) {
      rep[b] = d.nodes.size();
      d.nodes.push_back({DagNode::Kind::Block, b, std::nullopt, g.id(b)});
    }
  }
  for (auto child : f.children(loop)) {
    const auto& info = f.loop(child);
    const auto node = d.nodes.size();
    d.nodes.push_back({DagNode::Kind::Loop, info.header, child, "L_" + g.id(info.header)});
    for (auto b : info.body) rep[b] = node;
  }
  d.next = d.nodes.size();
  d.nodes.push_back({DagNode::Kind::Next, 0, std::nullopt, "next"});
  d.exit = d.nodes.size();
  d.nodes.push_back({DagNode::Kind::Exit, 0, std::nullopt, "exit"});
  d.succ.resize(d.nodes.size());
  d.pred.resize(d.nodes.size());

  auto add = [&](std::size_t u, std::size_t v) {
    if (u == v || d.has_edge(u, v)) return;
    d.succ[u].push_back(v);
    d.pred[v].push_back(u);
  };
  auto direct = [&](BlockIndex b) { return rep[b] != kNoNode && d.nodes[rep[b]].kind == DagNode::Kind::Block; };

  const LoopInfo* info = loop ? &f.loop(*loop) : nullptr;
  auto is_back = [&](const Edge& e) {
    return info && e.second == info->header && info->contains(e.first);
  };
  auto is_exit = [&](const Edge& e) { return info && info->contains(e.first) && !info->contains(e.second); };
  auto inside = [&](const Edge& e) { return contains(f, loop, e.first) && contains(f, loop, e.second); };

  // Edge passes in a fixed order so that predecessor lists are deterministic:
  // block-to-block, back-edges, exit-edges, then edges through nested loops.
  for (const auto& e : g.edges()) {
    if (inside(e) && !is_back(e) && direct(e.first) && direct(e.second)) add(rep[e.first], rep[e.second]);
  }
  for (const auto& e : g.edges()) {
    if (is_back(e)) add(rep[e.first], d.next);
  }
  for (const auto& e : g.edges()) {
    if (is_exit(e)) add(rep[e.first], d.exit);
  }
  if (!loop) add(rep[g.exit()], d.exit);
  for (const auto& e : g.edges()) {
    if (inside(e) && !is_back(e) && !(direct(e.first) && direct(e.second))) add(rep[e.first], rep[e.second]);
  }

  d.start = loop ? rep[info->header] : rep[g.entry()];
  d.idom = immediate_dominators(d.succ, d.pred, d.start);
  return d;
}

std::vector<std::size_t> forced_passage(const Dag& d, std::size_t end, std::optional<std::size_t> start) {
  const auto s = start.value_or(d.start);
  std::vector<std::size_t> chain;
  if (d.idom[end] == kNoNode || !dominates(d.idom, s, end)) return chain;
  for (auto n = end; n != s; n = d.idom[n]) chain.push_back(n);
  std::reverse(chain.begin(), chain.end());
  return chain;
}

namespace {

class TreeBuilder {
 public:
  TreeBuilder(const Cfg& g, const LoopForest& f) : g_(g), f_(f) {}

  Cft build(const Dag& d, std::size_t start, std::size_t end, bool outermost) {
    std::vector<Cft> ch;
    auto forced = forced_passage(d, end, start);
    // Innermost-first, as in the algorithm; children are collected in reverse.
    while (!forced.empty()) {
      const auto c = forced.back();
      forced.pop_back();
      if (!d.nodes[c].is_virtual()) ch.push_back(leaf(d, c));
      if (d.pred[c].size() >= 2) {
        const auto ncd = forced.empty() ? start : forced.back();
        std::vector<Cft> br;
        for (auto p : d.pred[c]) br.push_back(build(d, ncd, p, false));
        ch.push_back(Cft::alt(std::move(br)));
      }
    }
    if (outermost) ch.push_back(leaf(d, start));
    std::reverse(ch.begin(), ch.end());
    return Cft::seq(std::move(ch));
  }

 private:
  Cft leaf(const Dag& d, std::size_t n) {
    const auto& node = d.nodes[n];
    if (node.kind == DagNode::Kind::Block) return Cft::leaf(node.label, g_.block(node.block).wcet);
    const auto& info = f_.loop(*node.loop);
    const Dag inner = loop_to_dag(g_, f_, node.loop);
    Cft body = build(inner, inner.start, inner.next, true);
    Cft exit = build(inner, inner.start, inner.exit, true);
    const auto& h = g_.id(info.header);
    return Cft::loop(h, std::move(body), info.bound.value_or(Param::identifier("x_" + h)), std::move(exit));
  }

  const Cfg& g_;
  const LoopForest& f_;
};

}  // namespace

Cft dag_to_cft(const Dag& d, std::size_t start, std::size_t end, const Cfg& g, const LoopForest& f) {
  TreeBuilder b(g, f);
  return b.build(d, start, end, start == d.start);
}

Restructured rename_duplicates(const Cft& t) {
  Restructured out{t, {}};
  std::map<std::string, int> leaf_count;
  std::map<std::string, int> loop_count;
  std::function<Cft(const Cft&)> go = [&](const Cft& n) -> Cft {
    if (n.is_leaf()) {
      const int k = leaf_count[n.origin()]++;
      auto label = k == 0 ? n.origin() : n.origin() + "#" + std::to_string(k);
      out.renames[n.origin()].push_back(label);
      return n.with_label(std::move(label));
    }
    std::vector<Cft> kids;
    for (const auto& c : n.children()) kids.push_back(go(c));
    auto r = n.with_children(std::move(kids));
    if (n.is_loop()) {
      const int k = loop_count[n.origin()]++;
      r = r.with_label(k == 0 ? n.origin() : n.origin() + "#" + std::to_string(k));
    }
    return r;
  };
  out.tree = go(t);
  return out;
}

Restructured build_cft(const Cfg& g, const LoopForest& f) {
  const Dag top = loop_to_dag(g, f, std::nullopt);
  return rename_duplicates(dag_to_cft(top, top.start, top.exit, g, f));
}

}  // namespace symwcet
