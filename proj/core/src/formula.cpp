#include "symwcet/formula.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "symwcet/error.hpp"

namespace symwcet {

LoopParam LoopParam::parse(const std::string& text) {
  if (text.empty() || text == "$") fail(ErrorKind::Syntax, "empty loop reference");
  if (text.front() == '$') return identifier(text.substr(1));
  return label(text);
}

LoopRef LoopParam::ref() const {
  if (id_) fail(ErrorKind::UnboundIdentifier, "unbound loop identifier '$" + name_ + "'");
  return LoopRef::parse(name_);
}

Formula Formula::make(Node n) { return Formula(std::make_shared<const Node>(std::move(n))); }

Formula Formula::constant(AbstractWcet w) { return make({Kind::Const, std::move(w), {}, {}, {}, {}}); }

Formula Formula::wcet_id(std::string name) {
  if (name.empty()) fail(ErrorKind::Syntax, "empty WCET identifier");
  return make({Kind::WcetId, {}, std::move(name), {}, {}, {}});
}

namespace {

std::vector<Formula> flatten(Formula::Kind k, std::vector<Formula> ops) {
  std::vector<Formula> out;
  for (auto& o : ops) {
    if (o.is(k)) {
      out.insert(out.end(), o.operands().begin(), o.operands().end());
    } else {
      out.push_back(std::move(o));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Formula Formula::plus(std::vector<Formula> ops) {
  ops = flatten(Kind::Plus, std::move(ops));
  if (ops.empty()) return zero();
  if (ops.size() == 1) return ops.front();
  return make({Kind::Plus, {}, {}, {}, {}, std::move(ops)});
}

Formula Formula::max(std::vector<Formula> ops) {
  ops = flatten(Kind::Max, std::move(ops));
  if (ops.empty()) return zero();
  if (ops.size() == 1) return ops.front();
  return make({Kind::Max, {}, {}, {}, {}, std::move(ops)});
}

Formula Formula::scalar(Param coefficient, Formula w) {
  return make({Kind::Scalar, {}, {}, std::move(coefficient), {}, {std::move(w)}});
}

Formula Formula::power(Formula body, Formula exit, LoopParam header, Param count) {
  return make({Kind::Power, {}, {}, std::move(count), std::move(header), {std::move(body), std::move(exit)}});
}

Formula Formula::restrict(Formula w, LoopParam loop, Param count) {
  return make({Kind::Restrict, {}, {}, std::move(count), std::move(loop), {std::move(w)}});
}

Formula Formula::with_operands(std::vector<Formula> ops) const {
  switch (kind()) {
    case Kind::Const:
    case Kind::WcetId:
      return *this;
    case Kind::Plus:
      return plus(std::move(ops));
    case Kind::Max:
      return max(std::move(ops));
    case Kind::Scalar:
      return scalar(count(), std::move(ops.at(0)));
    case Kind::Restrict:
      return restrict(std::move(ops.at(0)), loop(), count());
    case Kind::Power:
      return power(std::move(ops.at(0)), std::move(ops.at(1)), loop(), count());
  }
  return *this;
}

std::size_t Formula::operand_count() const {
  if (is(Kind::Const) || is(Kind::WcetId)) return 1;
  std::size_t n = 0;
  for (const auto& o : operands()) n += o.operand_count();
  return n;
}

std::size_t Formula::node_count() const {
  std::size_t n = 1;
  for (const auto& o : operands()) n += o.node_count();
  return n;
}

std::string Formula::to_string() const {
  switch (kind()) {
    case Kind::Const:
      return "(l=" + value().loop().to_string() + "," + value().seq().to_string() + ")";
    case Kind::WcetId:
      return name();
    case Kind::Plus:
    case Kind::Max: {
      std::string out = is(Kind::Plus) ? "(+" : "(max";
      for (const auto& o : operands()) out += " " + o.to_string();
      return out + ")";
    }
    case Kind::Scalar:
      return "(* " + count().to_string() + " " + operand().to_string() + ")";
    case Kind::Restrict:
      return "(ann " + operand().to_string() + " " + loop().to_string() + " " + count().to_string() + ")";
    case Kind::Power:
      return "(pow " + operands()[0].to_string() + " " + operands()[1].to_string() + " " + loop().to_string() + " " +
             count().to_string() + ")";
  }
  return {};
}

namespace {

class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  Formula parse_all() {
    auto f = formula();
    skip();
    if (pos_ != s_.size()) error("trailing input");
    return f;
  }

 private:
  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorKind::Syntax, "formula: " + what + " at offset " + std::to_string(pos_));
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  std::string atom() {
    skip();
    const auto begin = pos_;
    while (pos_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[pos_])) && s_[pos_] != '(' && s_[pos_] != ')')
      ++pos_;
    if (begin == pos_) error("expected a token");
    return s_.substr(begin, pos_ - begin);
  }

  void expect(char c) {
    skip();
    if (pos_ >= s_.size() || s_[pos_] != c) error(std::string("expected '") + c + "'");
    ++pos_;
  }

  static Param param(const std::string& tok) {
    if (std::all_of(tok.begin(), tok.end(), [](unsigned char c) { return std::isdigit(c); })) {
      try {
        return Param(static_cast<Cycles>(std::stoull(tok)));
      } catch (const std::out_of_range&) {
        fail(ErrorKind::Overflow, "integer '" + tok + "' out of range");
      }
    }
    return Param::identifier(tok);
  }

  Formula formula() {
    skip();
    if (pos_ >= s_.size()) error("unexpected end of input");
    if (s_[pos_] != '(') {
      auto tok = atom();
      if (tok.front() == '$' || std::isdigit(static_cast<unsigned char>(tok.front())))
        error("'" + tok + "' is not a WCET identifier");
      return Formula::wcet_id(std::move(tok));
    }
    if (s_.compare(pos_, 3, "(l=") == 0) {
      const auto close = s_.find(')', s_.find(']', pos_));
      if (close == std::string::npos) error("unterminated constant");
      auto w = AbstractWcet::parse(s_.substr(pos_, close - pos_ + 1));
      pos_ = close + 1;
      return Formula::constant(std::move(w));
    }
    ++pos_;
    const auto op = atom();
    Formula out;
    if (op == "+" || op == "max") {
      std::vector<Formula> ops;
      skip();
      while (pos_ < s_.size() && s_[pos_] != ')') {
        ops.push_back(formula());
        skip();
      }
      if (ops.size() < 2) error("'" + op + "' needs at least two operands");
      out = op == "+" ? Formula::plus(std::move(ops)) : Formula::max(std::move(ops));
    } else if (op == "*") {
      auto k = param(atom());
      out = Formula::scalar(std::move(k), formula());
    } else if (op == "ann") {
      auto w = formula();
      auto h = LoopParam::parse(atom());
      out = Formula::restrict(std::move(w), std::move(h), param(atom()));
    } else if (op == "pow") {
      auto body = formula();
      auto exit = formula();
      auto h = LoopParam::parse(atom());
      out = Formula::power(std::move(body), std::move(exit), std::move(h), param(atom()));
    } else {
      error("unknown operator '" + op + "'");
    }
    expect(')');
    return out;
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

std::strong_ordering lex(const std::vector<Formula>& a, const std::vector<Formula>& b) {
  return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

Formula Formula::parse(const std::string& text) { return Parser(text).parse_all(); }

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (a.kind() != b.kind()) return a.kind() <=> b.kind();
  switch (a.kind()) {
    case Formula::Kind::Const: {
      const auto c = a.value() <=> b.value();
      return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }
    case Formula::Kind::WcetId:
      return a.name().compare(b.name()) <=> 0;
    case Formula::Kind::Restrict:
    case Formula::Kind::Scalar:
    case Formula::Kind::Power: {
      if (auto c = lex(a.operands(), b.operands()); c != 0) return c;
      if (auto c = a.loop() <=> b.loop(); c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
      return a.count() <=> b.count();
    }
    case Formula::Kind::Plus:
    case Formula::Kind::Max:
      return lex(a.operands(), b.operands());
  }
  return std::strong_ordering::equal;
}

std::strong_ordering formula_order(const Formula& a, const Formula& b) { return a <=> b; }

std::set<std::string> Identifiers::all() const {
  std::set<std::string> out = wcets;
  out.insert(integers.begin(), integers.end());
  out.insert(loops.begin(), loops.end());
  return out;
}

Identifiers identifiers(const Formula& w) {
  Identifiers out;
  std::function<void(const Formula&)> go = [&](const Formula& f) {
    if (f.is(Formula::Kind::WcetId)) out.wcets.insert(f.name());
    if (f.is(Formula::Kind::Scalar) || f.is(Formula::Kind::Restrict) || f.is(Formula::Kind::Power)) {
      if (f.count().is_symbolic()) out.integers.insert(f.count().name());
    }
    if ((f.is(Formula::Kind::Restrict) || f.is(Formula::Kind::Power)) && f.loop().is_identifier())
      out.loops.insert(f.loop().name());
    for (const auto& o : f.operands()) go(o);
  };
  go(w);
  return out;
}

BoundValue parse_bound_value(const std::string& text) {
  if (text.empty()) fail(ErrorKind::Syntax, "empty binding value");
  if (std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isdigit(c); })) {
    try {
      return static_cast<Cycles>(std::stoull(text));
    } catch (const std::out_of_range&) {
      fail(ErrorKind::Overflow, "integer '" + text + "' out of range");
    }
  }
  if (text.front() == '(') return AbstractWcet::parse(text);
  if (text.front() == '-') fail(ErrorKind::InvalidValue, "negative value '" + text + "'");
  return text;
}

std::string to_string(const BoundValue& v) {
  if (const auto* k = std::get_if<Cycles>(&v)) return std::to_string(*k);
  if (const auto* w = std::get_if<AbstractWcet>(&v)) return w->to_string();
  return std::get<std::string>(v);
}

namespace {

std::string kind_of(const BoundValue& v) {
  if (std::holds_alternative<Cycles>(v)) return "an integer";
  if (std::holds_alternative<AbstractWcet>(v)) return "an abstract WCET";
  return "a loop label";
}

Param subst_int(const Param& p, const Bindings& rho) {
  if (p.is_literal()) return p;
  const auto it = rho.find(p.name());
  if (it == rho.end()) return p;
  if (const auto* k = std::get_if<Cycles>(&it->second)) return Param(*k);
  fail(ErrorKind::TypeMismatch, "integer identifier '" + p.name() + "' bound to " + kind_of(it->second));
}

LoopParam subst_loop(const LoopParam& h, const Bindings& rho) {
  if (!h.is_identifier()) return h;
  const auto it = rho.find(h.name());
  if (it == rho.end()) return h;
  if (const auto* l = std::get_if<std::string>(&it->second)) return LoopParam::label(*l);
  fail(ErrorKind::TypeMismatch, "loop identifier '$" + h.name() + "' bound to " + kind_of(it->second));
}

}  // namespace

Formula substitute(const Formula& w, const Bindings& rho) {
  if (rho.empty()) return w;
  switch (w.kind()) {
    case Formula::Kind::Const:
      return w;
    case Formula::Kind::WcetId: {
      const auto it = rho.find(w.name());
      if (it == rho.end()) return w;
      if (const auto* k = std::get_if<Cycles>(&it->second)) return Formula::constant(AbstractWcet::constant(*k));
      if (const auto* a = std::get_if<AbstractWcet>(&it->second)) return Formula::constant(*a);
      fail(ErrorKind::TypeMismatch, "WCET identifier '" + w.name() + "' bound to " + kind_of(it->second));
    }
    default:
      break;
  }
  std::vector<Formula> ops;
  for (const auto& o : w.operands()) ops.push_back(substitute(o, rho));
  switch (w.kind()) {
    case Formula::Kind::Scalar:
      return Formula::scalar(subst_int(w.count(), rho), ops[0]);
    case Formula::Kind::Restrict:
      return Formula::restrict(ops[0], subst_loop(w.loop(), rho), subst_int(w.count(), rho));
    case Formula::Kind::Power:
      return Formula::power(ops[0], ops[1], subst_loop(w.loop(), rho), subst_int(w.count(), rho));
    default:
      return w.with_operands(std::move(ops));
  }
}

namespace {

LoopRef resolve_loop(const LoopParam& h, const LoopLattice& lat) {
  auto ref = h.ref();
  lat.check(ref);
  return ref;
}

AbstractWcet fold(const Formula& w, const LoopLattice& lat) {
  switch (w.kind()) {
    case Formula::Kind::Const:
      return w.value();
    case Formula::Kind::WcetId:
      fail(ErrorKind::UnboundIdentifier, "unbound identifier '" + w.name() + "'");
    case Formula::Kind::Plus: {
      AbstractWcet acc;
      for (const auto& o : w.operands()) acc = awcet_seq(acc, fold(o, lat), lat);
      return acc;
    }
    case Formula::Kind::Max: {
      AbstractWcet acc = fold(w.operands().front(), lat);
      for (std::size_t i = 1; i < w.operands().size(); ++i) acc = awcet_alt(acc, fold(w.operands()[i], lat), lat);
      return acc;
    }
    case Formula::Kind::Scalar:
      return awcet_scalar(fold(w.operand(), lat), w.count().literal());
    case Formula::Kind::Restrict:
      return awcet_annotate(fold(w.operand(), lat), resolve_loop(w.loop(), lat), w.count().literal(), lat);
    case Formula::Kind::Power:
      return awcet_loop(fold(w.operands()[0], lat), fold(w.operands()[1], lat), resolve_loop(w.loop(), lat),
                        w.count().literal(), lat);
  }
  return {};
}

}  // namespace

AbstractWcet evaluate(const Formula& w, const Bindings& rho, const LoopLattice& lat) {
  const auto bound = substitute(w, rho);
  const auto missing = identifiers(bound).all();
  if (!missing.empty()) {
    std::string names;
    for (const auto& m : missing) names += (names.empty() ? "" : ", ") + m;
    fail(ErrorKind::UnboundIdentifier, "unbound identifiers: " + names);
  }
  return fold(bound, lat);
}

}  // namespace symwcet
