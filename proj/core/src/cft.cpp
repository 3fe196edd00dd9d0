#include "symwcet/cft.hpp"

#include <functional>
#include <set>

#include "symwcet/error.hpp"

namespace symwcet {

Cft Cft::leaf(std::string label, Param wcet, std::string origin) {
  if (origin.empty()) origin = label;
  return Cft(std::make_shared<const Node>(Node{CftKind::Leaf, std::move(label), std::move(origin), std::move(wcet), {}, {}, {}}));
}

Cft Cft::alt(std::vector<Cft> children) {
  if (children.size() == 1) return children.front();
  if (children.empty()) fail(ErrorKind::InvalidValue, "Alt node without children");
  return Cft(std::make_shared<const Node>(Node{CftKind::Alt, {}, {}, {}, {}, std::move(children), {}}));
}

Cft Cft::seq(std::vector<Cft> children) {
  if (children.size() == 1) return children.front();
  return Cft(std::make_shared<const Node>(Node{CftKind::Seq, {}, {}, {}, {}, std::move(children), {}}));
}

Cft Cft::loop(std::string label, Cft body, Param bound, Cft exit, std::string origin) {
  if (origin.empty()) origin = label;
  if (bound.is_literal() && bound.literal() == 0) fail(ErrorKind::InvalidValue, "loop '" + label + "' has bound 0");
  return Cft(std::make_shared<const Node>(
      Node{CftKind::Loop, std::move(label), std::move(origin), {}, std::move(bound), {std::move(body), std::move(exit)}, {}}));
}

Cft Cft::with_annotation(std::optional<Annotation> a) const {
  auto n = std::make_shared<Node>(*node_);
  n->annotation = std::move(a);
  return Cft(std::move(n));
}

Cft Cft::with_label(std::string label) const {
  auto n = std::make_shared<Node>(*node_);
  n->label = std::move(label);
  return Cft(std::move(n));
}

Cft Cft::with_children(std::vector<Cft> children) const {
  auto n = std::make_shared<Node>(*node_);
  n->children = std::move(children);
  return Cft(std::move(n));
}

std::size_t Cft::size() const {
  std::size_t n = 1;
  for (const auto& c : children()) n += c.size();
  return n;
}

bool operator==(const Cft& a, const Cft& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.kind == y.kind && x.label == y.label && x.origin == y.origin && x.wcet == y.wcet && x.bound == y.bound &&
         x.annotation == y.annotation && x.children == y.children;
}

namespace {

std::string strip_copy(const std::string& label) { return label.substr(0, label.find('#')); }

void sexpr(const Cft& t, bool renamed, std::string& out) {
  if (t.annotation()) out += "(@ ";
  const auto& name = renamed ? t.label() : t.origin();
  switch (t.kind()) {
    case CftKind::Leaf:
      out += name;
      break;
    case CftKind::Alt:
    case CftKind::Seq:
      out += t.kind() == CftKind::Alt ? "(alt" : "(seq";
      for (const auto& c : t.children()) {
        out += ' ';
        sexpr(c, renamed, out);
      }
      out += ')';
      break;
    case CftKind::Loop:
      out += "(loop " + name + " ";
      sexpr(t.body(), renamed, out);
      out += " " + t.bound().to_string() + " ";
      sexpr(t.exit(), renamed, out);
      out += ')';
      break;
  }
  if (const auto& a = t.annotation()) {
    const auto loop = a->loop.is_loop() && !renamed ? strip_copy(a->loop.label()) : a->loop.to_string();
    out += " " + loop + " " + a->max.to_string() + ")";
  }
}

void walk(const Cft& t, const std::function<void(const Cft&)>& f) {
  f(t);
  for (const auto& c : t.children()) walk(c, f);
}

void lattice_walk(const Cft& t, const std::optional<std::string>& parent, LoopLattice& out) {
  if (t.is_loop()) {
    out.add(t.label(), parent);
    lattice_walk(t.body(), t.label(), out);
    lattice_walk(t.exit(), parent, out);
    return;
  }
  for (const auto& c : t.children()) lattice_walk(c, parent, out);
}

using NodePath = std::vector<std::size_t>;

void find_leaves(const Cft& t, NodePath& at, const std::function<bool(const Cft&)>& match, std::vector<NodePath>& out) {
  if (t.is_leaf() && match(t)) out.push_back(at);
  for (std::size_t i = 0; i < t.children().size(); ++i) {
    at.push_back(i);
    find_leaves(t.children()[i], at, match, out);
    at.pop_back();
  }
}

NodePath resolve_leaf(const Cft& t, const std::string& target) {
  std::vector<NodePath> hits;
  NodePath at;
  if (target.size() > 2 && target.ends_with("#0")) {
    const auto base = target.substr(0, target.size() - 2);
    find_leaves(t, at, [&](const Cft& n) { return n.label() == base && n.origin() == base; }, hits);
  } else {
    find_leaves(t, at, [&](const Cft& n) { return n.origin() == target; }, hits);
    if (hits.size() <= 1) {
      hits.clear();
      find_leaves(t, at, [&](const Cft& n) { return n.label() == target; }, hits);
    }
  }
  if (hits.empty()) fail(ErrorKind::UnknownBlock, "no leaf named '" + target + "'");
  if (hits.size() > 1) {
    std::string labels;
    for (const auto& h : hits) {
      const Cft* n = &t;
      for (auto i : h) n = &n->children()[i];
      labels += (labels.empty() ? "" : ", ") + n->label();
    }
    fail(ErrorKind::AmbiguousTarget, "block '" + target + "' is duplicated in the tree (" + labels + "); name one copy, " + target + "#0 for the first");
  }
  return hits.front();
}

// Loops whose body contains the node at `path`, innermost first.
std::vector<const Cft*> body_ancestors(const Cft& t, const NodePath& path) {
  std::vector<const Cft*> out;
  const Cft* n = &t;
  for (auto i : path) {
    if (n->is_loop() && i == 0) out.push_back(n);
    n = &n->children()[i];
  }
  return {out.rbegin(), out.rend()};
}

Annotation resolve_annotation(const Cft& t, const NodePath& path, const AnnotationRequest& a, const std::string& target) {
  if (a.loop == "TOP") return {LoopRef::top(), a.max};
  const auto ancestors = body_ancestors(t, path);
  for (const auto* l : ancestors) {
    if (l->label() == a.loop) return {LoopRef::loop(l->label()), a.max};
  }
  for (const auto* l : ancestors) {
    if (l->origin() == a.loop) return {LoopRef::loop(l->label()), a.max};
  }
  fail(ErrorKind::NonAncestorLoop, "loop '" + a.loop + "' does not enclose '" + target + "'");
}

Cft replace_at(const Cft& t, const NodePath& path, std::size_t depth, const Cft& with) {
  if (depth == path.size()) return with;
  auto kids = t.children();
  kids[path[depth]] = replace_at(kids[path[depth]], path, depth + 1, with);
  return t.with_children(std::move(kids));
}

const Cft& node_at(const Cft& t, const NodePath& path) {
  const Cft* n = &t;
  for (auto i : path) n = &n->children()[i];
  return *n;
}

}  // namespace

std::string to_sexpr(const Cft& t, bool renamed) {
  std::string out;
  sexpr(t, renamed, out);
  return out;
}

LoopLattice loop_lattice(const Cft& t) {
  LoopLattice out;
  lattice_walk(t, std::nullopt, out);
  return out;
}

std::vector<std::pair<Cft, Annotation>> ann_set(const Cft& t) {
  std::vector<std::pair<Cft, Annotation>> out;
  walk(t, [&](const Cft& n) {
    if (n.annotation()) out.emplace_back(n, *n.annotation());
  });
  return out;
}

std::vector<std::string> loop_labels(const Cft& t) {
  std::vector<std::string> out;
  walk(t, [&](const Cft& n) {
    if (n.is_loop()) out.push_back(n.label());
  });
  return out;
}

std::vector<std::string> leaf_labels(const Cft& t) {
  std::vector<std::string> out;
  walk(t, [&](const Cft& n) {
    if (n.is_leaf()) out.push_back(n.label());
  });
  return out;
}

Cft attach_annotation(const Cft& t, const std::string& target, const AnnotationRequest& a) {
  const auto path = resolve_leaf(t, target);
  const auto ann = resolve_annotation(t, path, a, target);
  return replace_at(t, path, 0, node_at(t, path).with_annotation(ann));
}

Cft split_leaf(const Cft& t, const std::string& block, const std::vector<Variant>& variants) {
  if (variants.empty()) fail(ErrorKind::InvalidValue, "split of '" + block + "' has no variants");
  const auto path = resolve_leaf(t, block);
  const Cft& old = node_at(t, path);

  std::set<std::string> taken;
  for (const auto& l : leaf_labels(t)) {
    if (l != old.label()) taken.insert(l);
  }
  std::vector<Cft> leaves;
  for (const auto& v : variants) {
    if (v.id.empty() || v.id.find_first_of("#$()[]|, \t\n") != std::string::npos || v.id == "TOP" || v.id == "BOTTOM")
      fail(ErrorKind::InvalidProgram, "invalid variant id '" + v.id + "'");
    if (!taken.insert(v.id).second) fail(ErrorKind::DuplicateVariantId, "variant id '" + v.id + "' is already used");
    auto leaf = Cft::leaf(v.id, v.wcet);
    if (v.annotation) leaf = leaf.with_annotation(resolve_annotation(t, path, *v.annotation, v.id));
    leaves.push_back(std::move(leaf));
  }
  Cft replacement = Cft::alt(std::move(leaves));
  if (old.annotation()) {
    if (replacement.annotation())
      fail(ErrorKind::InvalidValue, "split of annotated leaf '" + block + "' into one annotated variant");
    replacement = replacement.with_annotation(old.annotation());
  }
  return replace_at(t, path, 0, replacement);
}

}  // namespace symwcet
