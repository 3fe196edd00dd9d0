#pragma once

#include <compare>
#include <optional>
#include <string>

#include "symwcet/cft.hpp"
#include "symwcet/loops.hpp"
#include "symwcet/multiset.hpp"

namespace symwcet {

/// Abstract WCET (l, η): η[i] bounds the i-th greatest execution time of the
/// code per entry of loop l. An all-zero η is always paired with ⊤.
class AbstractWcet {
 public:
  AbstractWcet() = default;
  AbstractWcet(LoopRef loop, WcetSeq seq);
  /// (⊤, {c} ⊗ ∞)
  static AbstractWcet constant(Cycles c) { return {LoopRef::top(), WcetSeq::constant(c)}; }
  static AbstractWcet zero() { return {}; }

  const LoopRef& loop() const { return loop_; }
  const WcetSeq& seq() const { return seq_; }
  bool is_zero() const { return seq_.is_zero(); }

  /// "(loop=b2, [11|1])"
  std::string to_string() const;
  /// Accepts "(loop=b2, [11|1])" and the formula form "(l=b2,[11|1])".
  static AbstractWcet parse(const std::string& text);

  friend bool operator==(const AbstractWcet&, const AbstractWcet&) = default;
  friend auto operator<=>(const AbstractWcet&, const AbstractWcet&) = default;

 private:
  LoopRef loop_;
  WcetSeq seq_;
};

/// ω(Seq(a, b)) from γ(a), γ(b).
AbstractWcet awcet_seq(const AbstractWcet& a, const AbstractWcet& b, const LoopLattice& lat);
/// ω(Alt(a, b)).
AbstractWcet awcet_alt(const AbstractWcet& a, const AbstractWcet& b, const LoopLattice& lat);
/// ω(Loop(h, body, x, exit)).
AbstractWcet awcet_loop(const AbstractWcet& body, const AbstractWcet& exit, const LoopRef& header, Cycles x,
                        const LoopLattice& lat);
/// γ from ω and the annotation (loop, max); `max == nullopt` is ∞.
/// Throws IncomparableLoops when the loop meet is ⊥.
AbstractWcet awcet_annotate(const AbstractWcet& w, const LoopRef& loop, std::optional<Cycles> max,
                            const LoopLattice& lat);
/// n ⊙ (l, η)
AbstractWcet awcet_scalar(const AbstractWcet& w, Cycles n);

/// γ(t) over a concrete tree. Throws SymbolicValuePresent for identifiers.
AbstractWcet gamma(const Cft& t, const LoopLattice& lat);
AbstractWcet gamma(const Cft& t);

/// Concrete WCET of n executions spread over e entries of the loop.
Cycles eval(const AbstractWcet& w, Cycles e, Cycles n);

}  // namespace symwcet
