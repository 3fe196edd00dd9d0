#pragma once

#include <compare>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "symwcet/awcet.hpp"
#include "symwcet/param.hpp"

namespace symwcet {

/// Loop position of a formula (`h ::= b | id`): a loop label, "TOP", or a
/// loop identifier written "$name".
class LoopParam {
 public:
  LoopParam() = default;
  static LoopParam label(std::string l) { return LoopParam(false, std::move(l)); }
  static LoopParam identifier(std::string id) { return LoopParam(true, std::move(id)); }
  static LoopParam parse(const std::string& text);

  bool is_identifier() const { return id_; }
  const std::string& name() const { return name_; }
  LoopRef ref() const;
  std::string to_string() const { return id_ ? "$" + name_ : name_; }

  friend bool operator==(const LoopParam&, const LoopParam&) = default;
  friend auto operator<=>(const LoopParam&, const LoopParam&) = default;

 private:
  LoopParam(bool id, std::string n) : id_(id), name_(std::move(n)) {}
  bool id_ = false;
  std::string name_ = "TOP";
};

/// WCET formula. Constructor ranks give the term order ≺:
/// Const < WcetId < Restrict < Scalar < Plus < Max < Power.
class Formula {
 public:
  enum class Kind { Const, WcetId, Restrict, Scalar, Plus, Max, Power };

  Formula() : Formula(constant(AbstractWcet::zero())) {}

  static Formula constant(AbstractWcet w);
  static Formula zero() { return constant(AbstractWcet::zero()); }
  static Formula wcet_id(std::string name);
  /// Flattens nested operands of the same kind and sorts them under ≺.
  /// Zero operands give 0̲, one operand gives the operand itself.
  static Formula plus(std::vector<Formula> ops);
  static Formula max(std::vector<Formula> ops);
  static Formula scalar(Param coefficient, Formula w);
  static Formula power(Formula body, Formula exit, LoopParam header, Param count);
  static Formula restrict(Formula w, LoopParam loop, Param count);

  Kind kind() const { return node_->kind; }
  bool is(Kind k) const { return kind() == k; }
  bool is_zero() const { return is(Kind::Const) && value().is_zero(); }
  const AbstractWcet& value() const { return node_->value; }
  const std::string& name() const { return node_->name; }
  /// Scalar coefficient, Power iteration count, Restrict maximum.
  const Param& count() const { return node_->count; }
  const LoopParam& loop() const { return node_->loop; }
  /// Plus/Max operands; {w} for Scalar/Restrict; {body, exit} for Power.
  const std::vector<Formula>& operands() const { return node_->ops; }
  const Formula& operand() const { return node_->ops.front(); }

  /// Same node with new operands, re-canonicalized.
  Formula with_operands(std::vector<Formula> ops) const;

  /// Constants and identifiers.
  std::size_t operand_count() const;
  std::size_t node_count() const;

  std::string to_string() const;
  static Formula parse(const std::string& text);

  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);
  friend bool operator==(const Formula& a, const Formula& b) { return (a <=> b) == 0; }

 private:
  struct Node {
    Kind kind;
    AbstractWcet value;
    std::string name;
    Param count;
    LoopParam loop;
    std::vector<Formula> ops;
  };
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Formula make(Node n);
  std::shared_ptr<const Node> node_;
};

std::strong_ordering formula_order(const Formula& a, const Formula& b);

/// Identifiers of a formula by role.
struct Identifiers {
  std::set<std::string> wcets;
  std::set<std::string> integers;
  std::set<std::string> loops;

  std::set<std::string> all() const;
};
Identifiers identifiers(const Formula& w);

/// Value bound to an identifier. Integers bound to WCET identifiers read as
/// the constant (⊤, k̄); strings name loops.
using BoundValue = std::variant<Cycles, AbstractWcet, std::string>;
using Bindings = std::map<std::string, BoundValue>;

/// "12" → integer, "(loop=…)" / "(l=…)" → abstract WCET, anything else → loop label.
BoundValue parse_bound_value(const std::string& text);
std::string to_string(const BoundValue& v);

/// ρ(w). Unbound identifiers are left in place. Throws TypeMismatch.
Formula substitute(const Formula& w, const Bindings& rho);

/// Folds a complete formula to its abstract WCET. Throws UnboundIdentifier
/// (listing every missing identifier), TypeMismatch, UnknownLoop.
AbstractWcet evaluate(const Formula& w, const Bindings& rho, const LoopLattice& lat);

}  // namespace symwcet
