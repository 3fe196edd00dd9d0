#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "symwcet/cfg.hpp"
#include "symwcet/param.hpp"

namespace symwcet {

/// Reference into the loop nesting lattice: a loop label, or the synthetic
/// top (whole program) and bottom (empty loop) elements.
class LoopRef {
 public:
  enum class Kind { Bottom, Top, Loop };

  static LoopRef top() { return LoopRef(Kind::Top, {}); }
  static LoopRef bottom() { return LoopRef(Kind::Bottom, {}); }
  static LoopRef loop(std::string label) { return LoopRef(Kind::Loop, std::move(label)); }
  /// "TOP" and "BOTTOM" name the synthetic elements; anything else is a loop label.
  static LoopRef parse(const std::string& text);

  LoopRef() : LoopRef(Kind::Top, {}) {}

  Kind kind() const { return kind_; }
  bool is_top() const { return kind_ == Kind::Top; }
  bool is_bottom() const { return kind_ == Kind::Bottom; }
  bool is_loop() const { return kind_ == Kind::Loop; }
  const std::string& label() const { return label_; }
  std::string to_string() const;

  friend bool operator==(const LoopRef&, const LoopRef&) = default;
  friend std::strong_ordering operator<=>(const LoopRef&, const LoopRef&) = default;

 private:
  LoopRef(Kind k, std::string label) : kind_(k), label_(std::move(label)) {}
  Kind kind_;
  std::string label_;
};

/// The lattice (loops ∪ {⊤, ⊥}, ⊑) over loop labels, given by a parent
/// relation. Loops are either nested or disjoint, so the non-synthetic part is
/// a forest and meet/join reduce to ancestor queries.
class LoopLattice {
 public:
  /// `parent == nullopt` places the loop directly under ⊤.
  void add(const std::string& label, std::optional<std::string> parent);

  bool contains(const std::string& label) const { return parent_.count(label) != 0; }
  std::optional<std::string> parent(const std::string& label) const;
  std::vector<std::string> labels() const;
  std::size_t size() const { return parent_.size(); }

  /// a ⊑ b. Throws UnknownLoop for labels not in the lattice.
  bool leq(const LoopRef& a, const LoopRef& b) const;
  LoopRef meet(const LoopRef& a, const LoopRef& b) const;
  LoopRef join(const LoopRef& a, const LoopRef& b) const;
  void check(const LoopRef& r) const;

 private:
  bool is_ancestor(const std::string& anc, std::string label) const;
  std::map<std::string, std::optional<std::string>> parent_;
};

struct LoopInfo {
  BlockIndex header = 0;
  std::vector<Edge> back_edges;
  std::vector<Edge> entry_edges;
  std::vector<Edge> exit_edges;
  std::vector<BlockIndex> body;            // sorted, contains header
  std::optional<std::size_t> parent;       // index of the immediately enclosing loop
  std::optional<Param> bound;              // x_h; absent until supplied

  bool contains(BlockIndex b) const;
};

/// All natural loops of a reducible CFG with their nesting.
class LoopForest {
 public:
  LoopForest(const Cfg& g, std::vector<LoopInfo> loops);

  const std::vector<LoopInfo>& loops() const { return loops_; }
  const LoopInfo& loop(std::size_t i) const { return loops_[i]; }
  std::optional<std::size_t> loop_of_header(BlockIndex h) const;
  /// Innermost loop containing `b`, nullopt when only ⊤ contains it.
  std::optional<std::size_t> innermost(BlockIndex b) const { return innermost_[b]; }
  /// Loops whose parent is `outer` (nullopt = ⊤).
  std::vector<std::size_t> children(std::optional<std::size_t> outer) const;
  const LoopLattice& lattice() const { return lattice_; }
  std::size_t size() const { return loops_.size(); }

 private:
  std::vector<LoopInfo> loops_;
  std::vector<std::optional<std::size_t>> innermost_;
  std::map<BlockIndex, std::size_t> by_header_;
  LoopLattice lattice_;
};

/// Identifies headers, back/entry/exit edges, path-based bodies and nesting.
/// Throws IrreducibleLoop when a cycle is entered other than through a dominator.
LoopForest build_loop_forest(const Cfg& g, const std::map<std::string, Param>& bounds = {});

LoopRef loop_meet(const LoopRef& a, const LoopRef& b, const LoopLattice& lattice);
LoopRef loop_join(const LoopRef& a, const LoopRef& b, const LoopLattice& lattice);

}  // namespace symwcet
