#include "generators.hpp"

#include <algorithm>
#include <functional>

#include "symwcet/error.hpp"
#include "symwcet/pipeline.hpp"

namespace symwcet::testing {

namespace {

Cycles uniform(std::mt19937_64& rng, Cycles lo, Cycles hi) {
  return std::uniform_int_distribution<Cycles>(lo, hi)(rng);
}

bool chance(std::mt19937_64& rng, double p) { return std::bernoulli_distribution(p)(rng); }

template <class T>
const T& pick(std::mt19937_64& rng, const std::vector<T>& v) {
  return v[uniform(rng, 0, v.size() - 1)];
}

class Builder {
 public:
  Builder(std::mt19937_64& rng, const ProgramShape& shape) : rng_(rng), shape_(shape) {}

  struct Region {
    std::size_t entry;
    std::size_t exit;
  };

  Region region(std::size_t budget) {
    enum Kind { Block, Seq, Branch, Loop };
    std::vector<Kind> kinds;
    if (budget <= 2) kinds.push_back(Block);
    if (budget >= 2) kinds.insert(kinds.end(), {Seq, Seq});
    if (budget >= 3) kinds.insert(kinds.end(), {Branch, Branch});
    if (budget >= 2 && loops_ < shape_.max_loops) kinds.insert(kinds.end(), {Loop, Loop});
    switch (pick(rng_, kinds)) {
      case Block: {
        const auto b = fresh();
        return {b, b};
      }
      case Seq: {
        const auto k = uniform(rng_, 1, budget - 1);
        const auto a = region(k);
        const auto b = region(budget - k);
        edge(a.exit, b.entry);
        return {a.entry, b.exit};
      }
      case Branch: {
        const auto c = fresh();
        const auto left = uniform(rng_, 1, budget - 2);
        const auto t = region(left);
        edge(c, t.entry);
        std::optional<Region> e;
        if (budget - 2 - left >= 1 && chance(rng_, 0.6)) e = region(budget - 2 - left);
        const auto j = fresh();
        edge(t.exit, j);
        if (e) {
          edge(c, e->entry);
          edge(e->exit, j);
        } else {
          edge(c, j);
        }
        return {c, j};
      }
      case Loop:
        break;
    }
    ++loops_;
    const auto h = fresh();
    headers_.push_back(h);
    stack_.push_back(headers_.size() - 1);
    loops_of_.back() = stack_;
    Region r{h, h};
    if (budget >= 3 && chance(rng_, 0.8)) {
      const auto body = region(uniform(rng_, 1, budget - 2));
      edge(h, body.entry);
      edge(body.exit, h);
      stack_.pop_back();
      const auto after = fresh();
      edge(chance(rng_, 0.5) ? h : body.exit, after);
      r.exit = after;
    } else {
      edge(h, h);
      stack_.pop_back();
      const auto after = fresh();
      edge(h, after);
      r.exit = after;
    }
    return r;
  }

  void extra_edges(const Region& top) {
    const std::size_t n = names_.size();
    for (int attempt = 0; attempt < 2; ++attempt) {
      if (!chance(rng_, shape_.extra_edge_chance)) continue;
      std::vector<std::pair<std::size_t, std::size_t>> jumps;
      for (std::size_t u = 0; u < n; ++u) {
        if (u == top.exit) continue;
        for (std::size_t v = u + 1; v < n; ++v) {
          const auto& lu = loops_of_[u];
          const auto& lv = loops_of_[v];
          if (lv.size() <= lu.size() && std::equal(lv.begin(), lv.end(), lu.begin())) jumps.emplace_back(u, v);
        }
      }
      if (!jumps.empty()) {
        const auto [u, v] = pick(rng_, jumps);
        edge(u, v);
      }
    }
    if (chance(rng_, shape_.extra_edge_chance)) {
      std::vector<std::pair<std::size_t, std::size_t>> continues;
      for (std::size_t u = 0; u < n; ++u) {
        for (auto l : loops_of_[u]) continues.emplace_back(u, headers_[l]);
      }
      if (!continues.empty()) {
        const auto [u, v] = pick(rng_, continues);
        edge(u, v);
      }
    }
  }

  Cfg finish(const Region& top) {
    std::vector<Block> blocks;
    for (const auto& name : names_) blocks.push_back({name, uniform(rng_, 0, shape_.max_wcet)});
    std::vector<EdgeIds> edges;
    for (const auto& [u, v] : edges_) edges.emplace_back(names_[u], names_[v]);
    return Cfg(std::move(blocks), edges, names_[top.entry], names_[top.exit]);
  }

 private:
  std::size_t fresh() {
    names_.push_back("b" + std::to_string(names_.size() + 1));
    loops_of_.push_back(stack_);
    return names_.size() - 1;
  }
  void edge(std::size_t u, std::size_t v) { edges_.emplace_back(u, v); }

  std::mt19937_64& rng_;
  ProgramShape shape_;
  std::vector<std::string> names_;
  std::vector<std::vector<std::size_t>> loops_of_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
  std::vector<std::size_t> headers_;
  std::vector<std::size_t> stack_;
  std::size_t loops_ = 0;
};

}  // namespace

Program random_program(std::mt19937_64& rng, const ProgramShape& shape) {
  for (;;) {
    Builder b(rng, shape);
    const auto top = b.region(uniform(rng, (shape.max_blocks + 1) / 2, shape.max_blocks));
    b.extra_edges(top);
    auto cfg = b.finish(top);
    const auto forest = build_loop_forest(cfg);
    if (forest.size() > shape.max_loops) continue;
    std::map<std::string, Param> bounds;
    for (const auto& l : forest.loops()) bounds[cfg.id(l.header)] = uniform(rng, 1, shape.max_bound);
    return Program{"random", std::move(cfg), std::move(bounds), {}, {}};
  }
}

Program synthetic_program(std::size_t blocks, std::size_t symbolic_bounds) {
  std::vector<Block> bs;
  std::vector<EdgeIds> edges;
  std::map<std::string, Param> bounds;
  auto block = [&] {
    const auto id = "b" + std::to_string(bs.size());
    bs.push_back({id, Cycles{bs.size() * 7 % 13 + 1}});
    return id;
  };
  auto bound = [&](const std::string& h) {
    bounds[h] = bounds.size() < symbolic_bounds ? Param::identifier("n") : Param(10);
  };
  const auto entry = block();
  auto last = entry;
  for (std::size_t motif = 0; bs.size() + 6 < blocks; ++motif) {
    switch (motif % 3) {
      case 0: {  // if-then-else
        const auto t = block();
        const auto e = block();
        const auto j = block();
        edges.insert(edges.end(), {{last, t}, {last, e}, {t, j}, {e, j}});
        last = j;
        break;
      }
      case 1: {  // loop over a branch
        const auto h = block();
        const auto t = block();
        const auto e = block();
        const auto j = block();
        const auto after = block();
        edges.insert(edges.end(), {{last, h}, {h, t}, {h, e}, {t, j}, {e, j}, {j, h}, {h, after}});
        bound(h);
        last = after;
        break;
      }
      default: {  // two nested loops
        const auto outer = block();
        const auto inner = block();
        const auto body = block();
        const auto latch = block();
        const auto after = block();
        edges.insert(edges.end(), {{last, outer}, {outer, inner}, {inner, body}, {body, inner}, {inner, latch},
                                   {latch, outer}, {outer, after}});
        bound(outer);
        bound(inner);
        last = after;
        break;
      }
    }
  }
  return Program{"synthetic", Cfg(std::move(bs), edges, entry, last), std::move(bounds), {}, {}};
}

std::map<std::string, std::vector<std::string>> body_ancestors(const Cft& t) {
  std::map<std::string, std::vector<std::string>> out;
  std::vector<std::string> stack;
  std::function<void(const Cft&)> go = [&](const Cft& n) {
    if (n.is_leaf()) {
      out[n.label()] = std::vector<std::string>(stack.rbegin(), stack.rend());
      return;
    }
    if (n.is_loop()) {
      stack.push_back(n.origin().empty() ? n.label() : n.origin());
      go(n.body());
      stack.pop_back();
      go(n.exit());
      return;
    }
    for (const auto& c : n.children()) go(c);
  };
  go(t);
  return out;
}

Program random_annotations(const Program& p, std::mt19937_64& rng) {
  Program out = p;
  const auto a = analyze(p);
  const auto anc = body_ancestors(a.base.tree);
  for (const auto& block : p.cfg.blocks()) {
    const auto r = a.base.renames.find(block.id);
    if (r == a.base.renames.end() || r->second.size() != 1) continue;
    const auto& loops = anc.at(block.id);
    const Cycles w = block.wcet.literal();
    if (!loops.empty() && chance(rng, 0.4)) {
      out.splits.push_back({block.id,
                            {{block.id + "_h", uniform(rng, 0, w), std::nullopt},
                             {block.id + "_m", w + uniform(rng, 1, 20), VariantSpec::Constraint{pick(rng, loops), 1}}}});
    } else if (chance(rng, 0.2)) {
      auto choices = loops;
      choices.push_back("TOP");
      out.annotations.push_back({block.id, pick(rng, choices), uniform(rng, 1, 3)});
    }
  }
  return out;
}

LoopLattice chain_lattice() {
  LoopLattice lat;
  lat.add("l1", std::nullopt);
  lat.add("l2", "l1");
  lat.add("l3", "l2");
  return lat;
}

namespace {

AbstractWcet random_awcet(std::mt19937_64& rng, Cycles max_value) {
  static const std::vector<std::string> loops{"TOP", "l1", "l2", "l3"};
  const Cycles tail = uniform(rng, 0, max_value);
  std::vector<Cycles> prefix;
  for (auto k = uniform(rng, 0, 3); k > 0; --k) prefix.push_back(uniform(rng, tail, tail + max_value));
  return {LoopRef::parse(pick(rng, loops)), WcetSeq(std::move(prefix), tail)};
}

Param random_count(std::mt19937_64& rng, Cycles lo) {
  static const std::vector<std::string> ids{"k1", "k2"};
  if (chance(rng, 0.3)) return Param::identifier(pick(rng, ids));
  return uniform(rng, lo, 3);
}

Formula formula(std::mt19937_64& rng, std::size_t budget, const FormulaShape& shape) {
  static const std::vector<std::string> wcets{"w1", "w2", "w3"};
  static const std::vector<std::string> loops{"TOP", "l1", "l2", "l3", "$h1"};
  static const std::vector<std::string> headers{"l1", "l2", "l3", "$h1"};
  if (budget <= 1 || chance(rng, 0.2)) {
    if (chance(rng, 0.5)) return Formula::constant(random_awcet(rng, shape.max_value));
    return Formula::wcet_id(pick(rng, wcets));
  }
  switch (uniform(rng, 0, 4)) {
    case 0:
    case 1: {
      const auto arity = std::min<std::size_t>(uniform(rng, 2, 3), budget - 1);
      std::vector<Formula> ops;
      std::size_t left = budget - 1;
      for (std::size_t i = 0; i < arity; ++i) {
        const std::size_t share = i + 1 == arity ? left : uniform(rng, 1, left - (arity - i - 1));
        ops.push_back(formula(rng, share, shape));
        left -= share;
      }
      return chance(rng, 0.5) ? Formula::plus(std::move(ops)) : Formula::max(std::move(ops));
    }
    case 2:
      return Formula::scalar(random_count(rng, 0), formula(rng, budget - 1, shape));
    case 3:
      return Formula::restrict(formula(rng, budget - 1, shape), LoopParam::parse(pick(rng, loops)),
                               random_count(rng, 1));
    default: {
      if (budget < 3) return Formula::wcet_id(pick(rng, wcets));
      const auto k = uniform(rng, 1, budget - 2);
      return Formula::power(formula(rng, k, shape), formula(rng, budget - 1 - k, shape),
                            LoopParam::parse(pick(rng, headers)), random_count(rng, 1));
    }
  }
}

}  // namespace

Formula random_formula(std::mt19937_64& rng, const FormulaShape& shape) {
  return formula(rng, uniform(rng, 1, shape.max_nodes), shape);
}

Bindings random_bindings(std::mt19937_64& rng) {
  static const std::vector<std::string> loops{"l1", "l2", "l3"};
  Bindings rho;
  for (const auto* w : {"w1", "w2", "w3"}) {
    if (chance(rng, 0.5)) {
      rho[w] = uniform(rng, 0, 9);
    } else {
      rho[w] = random_awcet(rng, 9);
    }
  }
  rho["k1"] = uniform(rng, 1, 3);
  rho["k2"] = uniform(rng, 1, 3);
  rho["h1"] = pick(rng, loops);
  return rho;
}

}  // namespace symwcet::testing
