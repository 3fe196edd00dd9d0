#include "symwcet/rewrite.hpp"

#include <cstdlib>
#include <optional>
#include <string>

#include "symwcet/error.hpp"

namespace symwcet {

using Kind = Formula::Kind;

std::size_t default_fuel() {
  if (const char* env = std::getenv("SYMWCET_FUEL")) {
    try {
      const auto v = std::stoull(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
  }
  return kDefaultFuel;
}

bool is_flat(const Formula& w) {
  switch (w.kind()) {
    case Kind::Const:
      return w.value().seq().is_constant();
    case Kind::WcetId:
    case Kind::Restrict:
      return false;
    case Kind::Scalar:
    case Kind::Plus:
    case Kind::Max:
    case Kind::Power:
      for (const auto& o : w.operands()) {
        if (!is_flat(o)) return false;
      }
      return true;
  }
  return false;
}

namespace {

template <typename F>
std::optional<AbstractWcet> attempt(F&& f) {
  try {
    return f();
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::vector<Formula> without(const std::vector<Formula>& ops, std::size_t i, std::size_t j) {
  std::vector<Formula> out;
  for (std::size_t k = 0; k < ops.size(); ++k) {
    if (k != i && k != j) out.push_back(ops[k]);
  }
  return out;
}

void drop_zeros(const Formula& w, std::vector<Formula>& out) {
  std::vector<Formula> kept;
  for (const auto& o : w.operands()) {
    if (!o.is_zero()) kept.push_back(o);
  }
  if (kept.size() != w.operands().size()) out.push_back(w.with_operands(std::move(kept)));
}

void fold_constants(const Formula& w, const LoopLattice& lat, std::vector<Formula>& out) {
  std::vector<Formula> rest;
  std::vector<AbstractWcet> consts;
  for (const auto& o : w.operands()) {
    if (o.is(Kind::Const))
      consts.push_back(o.value());
    else
      rest.push_back(o);
  }
  if (consts.size() < 2) return;
  const bool sum = w.is(Kind::Plus);
  auto folded = attempt([&] {
    AbstractWcet acc = consts.front();
    for (std::size_t i = 1; i < consts.size(); ++i)
      acc = sum ? awcet_seq(acc, consts[i], lat) : awcet_alt(acc, consts[i], lat);
    return acc;
  });
  if (!folded) return;
  rest.push_back(Formula::constant(*folded));
  out.push_back(w.with_operands(std::move(rest)));
}

// k ⊙ base with a literal k; anything else is 1 ⊙ itself.
std::pair<Cycles, Formula> split_coefficient(const Formula& w) {
  if (w.is(Kind::Scalar) && w.count().is_literal()) return {w.count().literal(), w.operand()};
  return {1, w};
}

// cst ⊞ rest, where rest is the list of non-constant addends.
std::pair<Formula, std::vector<Formula>> split_constant(const Formula& w) {
  if (w.is(Kind::Plus) && w.operands().front().is(Kind::Const)) {
    return {w.operands().front(), std::vector<Formula>(w.operands().begin() + 1, w.operands().end())};
  }
  if (w.is(Kind::Plus)) return {Formula::zero(), w.operands()};
  if (w.is(Kind::Const)) return {w, {}};
  return {Formula::zero(), {w}};
}

void plus_rules(const Formula& w, const LoopLattice& lat, std::vector<Formula>& out) {
  const auto& ops = w.operands();
  drop_zeros(w, out);
  fold_constants(w, lat, out);
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (ops[i].is(Kind::Const)) continue;
    const auto [ki, bi] = split_coefficient(ops[i]);
    if (bi.is(Kind::Const)) continue;
    for (std::size_t j = i + 1; j < ops.size(); ++j) {
      const auto [kj, bj] = split_coefficient(ops[j]);
      if (!(bi == bj)) continue;
      auto rest = without(ops, i, j);
      rest.push_back(Formula::scalar(Param(checked_add(ki, kj)), bi));
      out.push_back(Formula::plus(std::move(rest)));
    }
  }
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (!ops[i].is(Kind::Restrict)) continue;
    for (std::size_t j = i + 1; j < ops.size(); ++j) {
      if (!ops[j].is(Kind::Restrict) || !(ops[i].loop() == ops[j].loop()) || !(ops[i].count() == ops[j].count()))
        continue;
      auto rest = without(ops, i, j);
      rest.push_back(Formula::restrict(Formula::plus({ops[i].operand(), ops[j].operand()}), ops[i].loop(), ops[i].count()));
      out.push_back(Formula::plus(std::move(rest)));
    }
  }
}

void max_rules(const Formula& w, const LoopLattice& lat, std::vector<Formula>& out) {
  const auto& ops = w.operands();
  drop_zeros(w, out);
  fold_constants(w, lat, out);
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const auto [ci, ri] = split_constant(ops[i]);
    if (ri.empty() || !std::all_of(ri.begin(), ri.end(), [](const Formula& f) { return is_flat(f); })) continue;
    for (std::size_t j = i + 1; j < ops.size(); ++j) {
      const auto [cj, rj] = split_constant(ops[j]);
      if (ri != rj) continue;
      auto factored = ri;
      factored.push_back(Formula::max({ci, cj}));
      auto rest = without(ops, i, j);
      rest.push_back(Formula::plus(std::move(factored)));
      out.push_back(Formula::max(std::move(rest)));
    }
  }
}

void scalar_rules(const Formula& w, std::vector<Formula>& out) {
  const auto& k = w.count();
  const auto& x = w.operand();
  if (x.is_zero()) out.push_back(Formula::zero());
  if (k.is_literal() && k.literal() == 0) out.push_back(Formula::zero());
  if (k.is_literal() && k.literal() == 1) out.push_back(x);
  if (k.is_literal() && x.is(Kind::Const)) {
    if (auto v = attempt([&] { return awcet_scalar(x.value(), k.literal()); })) out.push_back(Formula::constant(*v));
  }
  if (k.is_literal() && x.is(Kind::Scalar) && x.count().is_literal())
    out.push_back(Formula::scalar(Param(checked_mul(k.literal(), x.count().literal())), x.operand()));
}

void restrict_rules(const Formula& w, const LoopLattice& lat, std::vector<Formula>& out) {
  const auto& x = w.operand();
  if (x.is_zero()) out.push_back(Formula::zero());
  if (w.count().is_literal() && w.count().literal() == 0) out.push_back(Formula::zero());
  if (x.is(Kind::Const) && !w.loop().is_identifier() && w.count().is_literal()) {
    if (auto v = attempt([&] {
          auto l = w.loop().ref();
          lat.check(l);
          return awcet_annotate(x.value(), l, w.count().literal(), lat);
        }))
      out.push_back(Formula::constant(*v));
  }
}

void power_rules(const Formula& w, const LoopLattice& lat, std::vector<Formula>& out) {
  const auto& body = w.operands()[0];
  const auto& exit = w.operands()[1];
  if (!exit.is_zero()) out.push_back(Formula::plus({Formula::power(body, Formula::zero(), w.loop(), w.count()), exit}));
  if (body.is_zero() && exit.is_zero()) out.push_back(Formula::zero());
  if (body.is(Kind::Const) && exit.is(Kind::Const) && !w.loop().is_identifier() && w.count().is_literal()) {
    if (auto v = attempt([&] {
          auto l = w.loop().ref();
          lat.check(l);
          return awcet_loop(body.value(), exit.value(), l, w.count().literal(), lat);
        }))
      out.push_back(Formula::constant(*v));
  }
}

}  // namespace

std::vector<Formula> root_rewrites(const Formula& w, const LoopLattice& lat) {
  std::vector<Formula> out;
  switch (w.kind()) {
    case Kind::Const:
    case Kind::WcetId:
      break;
    case Kind::Plus:
      plus_rules(w, lat, out);
      break;
    case Kind::Max:
      max_rules(w, lat, out);
      break;
    case Kind::Scalar:
      scalar_rules(w, out);
      break;
    case Kind::Restrict:
      restrict_rules(w, lat, out);
      break;
    case Kind::Power:
      power_rules(w, lat, out);
      break;
  }
  return out;
}

bool is_normal(const Formula& w, const LoopLattice& lat) {
  if (!root_rewrites(w, lat).empty()) return false;
  for (const auto& o : w.operands()) {
    if (!is_normal(o, lat)) return false;
  }
  return true;
}

namespace {

class Normalizer {
 public:
  Normalizer(const LoopLattice& lat, std::size_t fuel) : lat_(lat), fuel_(fuel) {}

  Formula run(const Formula& w) {
    if (w.operands().empty()) return w;
    std::vector<Formula> ops;
    ops.reserve(w.operands().size());
    bool changed = false;
    for (const auto& o : w.operands()) {
      ops.push_back(run(o));
      changed = changed || !(ops.back() == o);
    }
    Formula cur = changed ? w.with_operands(std::move(ops)) : w;
    auto next = root_rewrites(cur, lat_);
    if (next.empty()) return cur;
    spend();
    return run(next.front());
  }

  void spend() {
    if (steps == fuel_) fail(ErrorKind::FuelExhausted, "rewriting exceeded " + std::to_string(fuel_) + " steps");
    ++steps;
  }

  std::size_t steps = 0;

 private:
  const LoopLattice& lat_;
  std::size_t fuel_;
};

struct Redex {
  std::vector<std::size_t> path;
  Formula result;
};

void collect(const Formula& w, const LoopLattice& lat, std::vector<std::size_t>& path, std::vector<Redex>& out) {
  for (auto& r : root_rewrites(w, lat)) out.push_back({path, std::move(r)});
  for (std::size_t i = 0; i < w.operands().size(); ++i) {
    path.push_back(i);
    collect(w.operands()[i], lat, path, out);
    path.pop_back();
  }
}

Formula replace(const Formula& w, const std::vector<std::size_t>& path, std::size_t depth, const Formula& with) {
  if (depth == path.size()) return with;
  auto ops = w.operands();
  ops[path[depth]] = replace(ops[path[depth]], path, depth + 1, with);
  return w.with_operands(std::move(ops));
}

}  // namespace

Formula simplify(const Formula& w, const LoopLattice& lat, std::size_t fuel, SimplifyStats* stats) {
  Normalizer n(lat, fuel);
  auto out = n.run(w);
  if (stats) stats->steps = n.steps;
  return out;
}

Formula simplify_random(const Formula& w, const LoopLattice& lat, std::mt19937_64& rng, std::size_t fuel,
                        SimplifyStats* stats) {
  Formula cur = w;
  std::size_t steps = 0;
  for (;;) {
    std::vector<Redex> redexes;
    std::vector<std::size_t> path;
    collect(cur, lat, path, redexes);
    if (redexes.empty()) break;
    if (steps == fuel) fail(ErrorKind::FuelExhausted, "rewriting exceeded " + std::to_string(fuel) + " steps");
    ++steps;
    std::uniform_int_distribution<std::size_t> pick(0, redexes.size() - 1);
    const auto& r = redexes[pick(rng)];
    cur = replace(cur, r.path, 0, r.result);
  }
  if (stats) stats->steps = steps;
  return cur;
}

}  // namespace symwcet
