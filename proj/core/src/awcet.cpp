#include "symwcet/awcet.hpp"

#include "symwcet/error.hpp"

namespace symwcet {

AbstractWcet::AbstractWcet(LoopRef loop, WcetSeq seq) : loop_(std::move(loop)), seq_(std::move(seq)) {
  if (seq_.is_zero()) loop_ = LoopRef::top();
}

std::string AbstractWcet::to_string() const { return "(loop=" + loop_.to_string() + ", " + seq_.to_string() + ")"; }

AbstractWcet AbstractWcet::parse(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (c != ' ' && c != '\t') s += c;
  }
  std::size_t pos = 0;
  if (s.rfind("(loop=", 0) == 0)
    pos = 6;
  else if (s.rfind("(l=", 0) == 0)
    pos = 3;
  else
    fail(ErrorKind::Syntax, "malformed abstract WCET '" + text + "'");
  const auto comma = s.find(',', pos);
  if (comma == std::string::npos || s.back() != ')') fail(ErrorKind::Syntax, "malformed abstract WCET '" + text + "'");
  const auto loop = s.substr(pos, comma - pos);
  if (loop.empty()) fail(ErrorKind::Syntax, "malformed abstract WCET '" + text + "'");
  return {LoopRef::parse(loop), WcetSeq::parse(s.substr(comma + 1, s.size() - comma - 2))};
}

AbstractWcet awcet_seq(const AbstractWcet& a, const AbstractWcet& b, const LoopLattice& lat) {
  return {lat.meet(a.loop(), b.loop()), ms_ranksum(a.seq(), b.seq())};
}

AbstractWcet awcet_alt(const AbstractWcet& a, const AbstractWcet& b, const LoopLattice& lat) {
  return {lat.meet(a.loop(), b.loop()), ms_merge(a.seq(), b.seq())};
}

AbstractWcet awcet_loop(const AbstractWcet& body, const AbstractWcet& exit, const LoopRef& header, Cycles x,
                        const LoopLattice& lat) {
  if (x == 0) fail(ErrorKind::InvalidValue, "loop '" + header.to_string() + "' has bound 0");
  if (body.loop() == header) {
    const auto per_entry = WcetSeq::constant(body.seq().sum_first(x));
    return {exit.loop(), ms_ranksum(per_entry, exit.seq())};
  }
  return {lat.meet(body.loop(), exit.loop()), ms_ranksum(ms_group(body.seq(), x), exit.seq())};
}

AbstractWcet awcet_annotate(const AbstractWcet& w, const LoopRef& loop, std::optional<Cycles> max,
                            const LoopLattice& lat) {
  const auto l = lat.meet(w.loop(), loop);
  const auto seq = ms_restrict(w.seq(), max);
  if (l.is_bottom() && !seq.is_zero())
    fail(ErrorKind::IncomparableLoops,
         "annotation loop " + loop.to_string() + " is incomparable with " + w.loop().to_string());
  return {l, seq};
}

AbstractWcet awcet_scalar(const AbstractWcet& w, Cycles n) { return {w.loop(), ms_scalar(w.seq(), n)}; }

AbstractWcet gamma(const Cft& t, const LoopLattice& lat) {
  AbstractWcet w;
  switch (t.kind()) {
    case CftKind::Leaf:
      w = AbstractWcet::constant(t.wcet().literal());
      break;
    case CftKind::Alt:
      w = gamma(t.children().front(), lat);
      for (std::size_t i = 1; i < t.children().size(); ++i) w = awcet_alt(w, gamma(t.children()[i], lat), lat);
      break;
    case CftKind::Seq:
      for (const auto& c : t.children()) w = awcet_seq(w, gamma(c, lat), lat);
      break;
    case CftKind::Loop:
      w = awcet_loop(gamma(t.body(), lat), gamma(t.exit(), lat), LoopRef::loop(t.label()), t.bound().literal(), lat);
      break;
  }
  if (const auto& a = t.annotation()) w = awcet_annotate(w, a->loop, a->max.literal(), lat);
  return w;
}

AbstractWcet gamma(const Cft& t) { return gamma(t, loop_lattice(t)); }

Cycles eval(const AbstractWcet& w, Cycles e, Cycles n) { return ms_eval(w.seq(), e, n); }

}  // namespace symwcet
