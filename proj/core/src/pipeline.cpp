#include "symwcet/pipeline.hpp"

#include <variant>

#include "symwcet/symbolic.hpp"

namespace symwcet {

namespace {

Cft decorate(Cft t, const Program& p) {
  for (const auto& s : p.splits) {
    std::vector<Variant> variants;
    for (const auto& v : s.variants) {
      std::optional<AnnotationRequest> req;
      if (v.annotation) req = AnnotationRequest{v.annotation->loop, v.annotation->max};
      variants.push_back({v.id, v.wcet, req});
    }
    t = split_leaf(t, s.block, variants);
  }
  for (const auto& a : p.annotations) t = attach_annotation(t, a.target, {a.loop, a.max});
  return t;
}

Param bind(const Param& v, const Bindings& rho) {
  if (v.is_literal()) return v;
  const auto it = rho.find(v.name());
  if (it == rho.end()) return v;
  if (const auto* k = std::get_if<Cycles>(&it->second)) return *k;
  return v;
}

}  // namespace

Program instantiate(const Program& p, const Bindings& rho) {
  std::vector<Block> blocks = p.cfg.blocks();
  for (auto& b : blocks) b.wcet = bind(b.wcet, rho);
  std::vector<EdgeIds> edges;
  for (const auto& [u, v] : p.cfg.edges()) edges.emplace_back(p.cfg.id(u), p.cfg.id(v));
  Program out{p.name, Cfg(std::move(blocks), edges, p.cfg.id(p.cfg.entry()), p.cfg.id(p.cfg.exit())),
              p.loop_bounds, p.annotations, p.splits};
  for (auto& [h, x] : out.loop_bounds) x = bind(x, rho);
  for (auto& a : out.annotations) a.max = bind(a.max, rho);
  for (auto& s : out.splits) {
    for (auto& v : s.variants) {
      v.wcet = bind(v.wcet, rho);
      if (v.annotation) v.annotation->max = bind(v.annotation->max, rho);
    }
  }
  return out;
}

Analysis analyze(const Program& p) {
  auto forest = build_loop_forest(p.cfg, p.loop_bounds);
  auto base = build_cft(p.cfg, forest);
  auto tree = decorate(base.tree, p);
  auto lattice = loop_lattice(tree);
  return {std::move(forest), std::move(base), std::move(tree), std::move(lattice)};
}

Formula raw_formula(const Analysis& a) { return gamma_symbolic(a.tree, a.lattice, false); }

FormulaResult build_formula(const Analysis& a, std::size_t fuel) {
  FormulaResult r{raw_formula(a), {}, 0};
  SimplifyStats stats;
  r.simplified = simplify(r.raw, a.lattice, fuel, &stats);
  r.steps = stats.steps;
  return r;
}

}  // namespace symwcet
