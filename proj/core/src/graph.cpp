#include "symwcet/graph.hpp"

#include <utility>

namespace symwcet {

std::vector<std::size_t> reverse_postorder(const Adjacency& succ, std::size_t root) {
  std::vector<std::size_t> order;
  std::vector<char> seen(succ.size(), 0);
  // Iterative DFS; each frame is (node, next successor position).
  std::vector<std::pair<std::size_t, std::size_t>> stack;
  stack.emplace_back(root, 0);
  seen[root] = 1;
  while (!stack.empty()) {
    auto& [node, pos] = stack.back();
    if (pos < succ[node].size()) {
      const std::size_t next = succ[node][pos++];
      if (!seen[next]) {
        seen[next] = 1;
        stack.emplace_back(next, 0);
      }
    } else {
      order.push_back(node);
      stack.pop_back();
    }
  }
  return {order.rbegin(), order.rend()};
}

std::vector<std::size_t> immediate_dominators(const Adjacency& succ, const Adjacency& pred, std::size_t root) {
  const auto rpo = reverse_postorder(succ, root);
  std::vector<std::size_t> number(succ.size(), kNoNode);
  for (std::size_t i = 0; i < rpo.size(); ++i) number[rpo[i]] = i;

  std::vector<std::size_t> idom(succ.size(), kNoNode);
  idom[root] = root;

  auto intersect = [&](std::size_t a, std::size_t b) {
    while (a != b) {
      while (number[a] > number[b]) a = idom[a];
      while (number[b] > number[a]) b = idom[b];
    }
    return a;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 1; i < rpo.size(); ++i) {
      const std::size_t node = rpo[i];
      std::size_t candidate = kNoNode;
      for (std::size_t p : pred[node]) {
        if (idom[p] == kNoNode) continue;
        candidate = candidate == kNoNode ? p : intersect(p, candidate);
      }
      if (candidate != idom[node]) {
        idom[node] = candidate;
        changed = true;
      }
    }
  }
  return idom;
}

bool dominates(const std::vector<std::size_t>& idom, std::size_t a, std::size_t b) {
  if (idom[b] == kNoNode) return false;
  for (;;) {
    if (a == b) return true;
    const std::size_t up = idom[b];
    if (up == b) return false;
    b = up;
  }
}

}  // namespace symwcet
