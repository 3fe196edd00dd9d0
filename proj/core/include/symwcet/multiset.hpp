#pragma once

#include <compare>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "symwcet/param.hpp"

namespace symwcet {

/// A multiset over ℕ whose smallest element has infinite multiplicity,
/// viewed as the non-increasing sequence of its elements η[0] ≥ η[1] ≥ ….
///
/// Stored as run-length encoded prefix (strictly decreasing values, each
/// strictly greater than the tail) followed by the tail repeated forever, so
/// ⊗k with large k stays cheap.
class WcetSeq {
 public:
  struct Run {
    Cycles value;
    Cycles count;
    friend bool operator==(const Run&, const Run&) = default;
    friend auto operator<=>(const Run&, const Run&) = default;
  };

  WcetSeq() = default;
  /// Builds from explicit elements in any order. Elements equal to the tail are
  /// absorbed; elements below it are rejected with InvalidValue.
  WcetSeq(std::vector<Cycles> elements, Cycles tail);
  static WcetSeq constant(Cycles c) { return WcetSeq({}, c); }
  static WcetSeq zero() { return {}; }
  static WcetSeq from_runs(std::vector<Run> runs, Cycles tail);

  /// η[n], 0-based.
  Cycles operator[](Cycles n) const;
  /// η[0] + … + η[n-1].
  Cycles sum_first(Cycles n) const;

  const std::vector<Run>& runs() const { return runs_; }
  Cycles tail() const { return tail_; }
  /// Number of elements before the tail.
  Cycles prefix_size() const;
  /// Expanded prefix; throws InvalidValue above `limit` elements.
  std::vector<Cycles> prefix(Cycles limit = 1u << 20) const;
  bool is_zero() const { return runs_.empty() && tail_ == 0; }
  bool is_constant() const { return runs_.empty(); }

  /// "[9,8,8,8|4]"; runs longer than 8 are written "v*k".
  std::string to_string() const;
  static WcetSeq parse(const std::string& text);

  friend bool operator==(const WcetSeq&, const WcetSeq&) = default;
  friend auto operator<=>(const WcetSeq&, const WcetSeq&) = default;

 private:
  std::vector<Run> runs_;
  Cycles tail_ = 0;
};

/// ⊎: tail is the larger tail; finite elements above it are unioned.
WcetSeq ms_merge(const WcetSeq& a, const WcetSeq& b);
/// ⊗k, k ≥ 1. `k == nullopt` is ⊗∞.
WcetSeq ms_mult(const WcetSeq& a, std::optional<Cycles> k);
/// ⊕: rank-wise sum.
WcetSeq ms_ranksum(const WcetSeq& a, const WcetSeq& b);
/// n ⊙ η: rank-wise product.
WcetSeq ms_scalar(const WcetSeq& a, Cycles n);
/// η|_n; `n == nullopt` is η|_∞ = η.
WcetSeq ms_restrict(const WcetSeq& a, std::optional<Cycles> n);
/// Successive groups of `x` elements summed. Groups cover the prefix plus one
/// copy of the tail (padded with the tail); the last group becomes the tail.
WcetSeq ms_group(const WcetSeq& a, Cycles x);
/// Σ_{i<n} (η ⊗ e)[i]. Requires e ≥ 1, n ≥ 1 and e | n (NotMultiple).
Cycles ms_eval(const WcetSeq& a, Cycles e, Cycles n);

}  // namespace symwcet
