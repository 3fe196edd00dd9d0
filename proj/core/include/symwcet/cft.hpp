#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "symwcet/loops.hpp"
#include "symwcet/param.hpp"

namespace symwcet {

enum class CftKind { Leaf, Alt, Seq, Loop };

/// Context annotation (l, m): the node runs at most `max` times per entry of
/// loop `loop`. Absence of an annotation is the null annotation (⊤, ∞).
struct Annotation {
  LoopRef loop;
  Param max;

  friend bool operator==(const Annotation&, const Annotation&) = default;
};

/// Immutable control-flow tree. Copies share structure.
///
/// Leaves and loops carry a unique `label` (used by paths and formulas) and
/// the `origin` block id they were produced from. Loop children are
/// `{body, exit}`. A Seq without children is the empty path.
class Cft {
 public:
  static Cft leaf(std::string label, Param wcet, std::string origin = {});
  /// Arity-1 Alt/Seq collapse to their child.
  static Cft alt(std::vector<Cft> children);
  static Cft seq(std::vector<Cft> children);
  static Cft empty() { return seq({}); }
  static Cft loop(std::string label, Cft body, Param bound, Cft exit, std::string origin = {});

  CftKind kind() const { return node_->kind; }
  bool is_leaf() const { return kind() == CftKind::Leaf; }
  bool is_loop() const { return kind() == CftKind::Loop; }
  const std::string& label() const { return node_->label; }
  const std::string& origin() const { return node_->origin; }
  const Param& wcet() const { return node_->wcet; }
  const Param& bound() const { return node_->bound; }
  const std::vector<Cft>& children() const { return node_->children; }
  const Cft& body() const { return node_->children.at(0); }
  const Cft& exit() const { return node_->children.at(1); }
  const std::optional<Annotation>& annotation() const { return node_->annotation; }

  Cft with_annotation(std::optional<Annotation> a) const;
  Cft with_label(std::string label) const;
  /// Same node kind and payload over new children (no collapsing).
  Cft with_children(std::vector<Cft> children) const;

  std::size_t size() const;

  friend bool operator==(const Cft& a, const Cft& b);

 private:
  struct Node {
    CftKind kind;
    std::string label;
    std::string origin;
    Param wcet;
    Param bound;
    std::vector<Cft> children;
    std::optional<Annotation> annotation;
  };
  explicit Cft(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// S-expression: (seq (loop b1 (seq …) x_b1 b1) b5). Annotated nodes print as
/// (@ node loop max). `renamed` selects unique labels over origins.
std::string to_sexpr(const Cft& t, bool renamed = false);

/// Loop lattice induced by Loop-node nesting (labels are Loop labels).
LoopLattice loop_lattice(const Cft& t);

/// Every annotated node of `t` (including the root) with its annotation.
std::vector<std::pair<Cft, Annotation>> ann_set(const Cft& t);

/// Labels of Loop nodes inside `t` (including the root).
std::vector<std::string> loop_labels(const Cft& t);

/// Leaf labels in preorder.
std::vector<std::string> leaf_labels(const Cft& t);

/// Loop of an annotation as written in a document: "TOP", an exact Loop label
/// or the origin header of an enclosing Loop (nearest copy wins).
struct AnnotationRequest {
  std::string loop;
  Param max;
};

/// Sets the annotation on the leaf named `target`. A block id copied by
/// restructuring is ambiguous; name a copy by its unique label, or `id#0`
/// for the first one. Errors: UnknownBlock, AmbiguousTarget, NonAncestorLoop.
Cft attach_annotation(const Cft& t, const std::string& target, const AnnotationRequest& a);

struct Variant {
  std::string id;
  Param wcet;
  std::optional<AnnotationRequest> annotation;
};

/// Replaces the leaf `block` by an Alt over the variant leaves.
/// Errors: UnknownBlock, AmbiguousTarget, DuplicateVariantId, NonAncestorLoop.
Cft split_leaf(const Cft& t, const std::string& block, const std::vector<Variant>& variants);

}  // namespace symwcet
