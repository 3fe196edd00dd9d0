#include "symwcet/symbolic.hpp"

#include <algorithm>

namespace symwcet {

namespace {

bool all_const(const std::vector<Formula>& ops) {
  return std::all_of(ops.begin(), ops.end(), [](const Formula& f) { return f.is(Formula::Kind::Const); });
}

Formula build(const Cft& t, const LoopLattice& lat, bool fold) {
  Formula w;
  switch (t.kind()) {
    case CftKind::Leaf:
      w = t.wcet().is_literal() ? Formula::constant(AbstractWcet::constant(t.wcet().literal()))
                                : Formula::wcet_id(t.wcet().name());
      break;
    case CftKind::Alt:
    case CftKind::Seq: {
      std::vector<Formula> ops;
      for (const auto& c : t.children()) ops.push_back(build(c, lat, fold));
      const bool alt = t.kind() == CftKind::Alt;
      if (fold && all_const(ops)) {
        AbstractWcet acc = alt ? ops.front().value() : AbstractWcet::zero();
        for (std::size_t i = alt ? 1 : 0; i < ops.size(); ++i)
          acc = alt ? awcet_alt(acc, ops[i].value(), lat) : awcet_seq(acc, ops[i].value(), lat);
        w = Formula::constant(acc);
      } else {
        w = alt ? Formula::max(std::move(ops)) : Formula::plus(std::move(ops));
      }
      break;
    }
    case CftKind::Loop: {
      auto body = build(t.body(), lat, fold);
      auto exit = build(t.exit(), lat, fold);
      if (fold && body.is(Formula::Kind::Const) && exit.is(Formula::Kind::Const) && t.bound().is_literal()) {
        w = Formula::constant(awcet_loop(body.value(), exit.value(), LoopRef::loop(t.label()), t.bound().literal(), lat));
      } else {
        w = Formula::power(std::move(body), std::move(exit), LoopParam::label(t.label()), t.bound());
      }
      break;
    }
  }
  if (const auto& a = t.annotation()) {
    const auto loop = LoopParam::label(a->loop.to_string());
    if (fold && w.is(Formula::Kind::Const) && a->max.is_literal())
      w = Formula::constant(awcet_annotate(w.value(), a->loop, a->max.literal(), lat));
    else
      w = Formula::restrict(std::move(w), loop, a->max);
  }
  return w;
}

}  // namespace

Formula gamma_symbolic(const Cft& t, const LoopLattice& lat, bool fold) { return build(t, lat, fold); }

Formula gamma_symbolic(const Cft& t, bool fold) { return build(t, loop_lattice(t), fold); }

}  // namespace symwcet
