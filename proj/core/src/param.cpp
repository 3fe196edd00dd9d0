#include "symwcet/param.hpp"

#include <ostream>

#include "symwcet/error.hpp"

namespace symwcet {

Cycles checked_add(Cycles a, Cycles b) {
  Cycles out = 0;
  if (__builtin_add_overflow(a, b, &out)) fail(ErrorKind::Overflow, "execution time overflow in addition");
  return out;
}

Cycles checked_mul(Cycles a, Cycles b) {
  Cycles out = 0;
  if (__builtin_mul_overflow(a, b, &out)) fail(ErrorKind::Overflow, "execution time overflow in multiplication");
  return out;
}

Param Param::identifier(std::string name) {
  Param p;
  p.value_ = std::move(name);
  return p;
}

Cycles Param::literal() const {
  if (!is_literal()) fail(ErrorKind::SymbolicValuePresent, "symbolic value '" + name() + "' where a literal is required");
  return std::get<Cycles>(value_);
}

const std::string& Param::name() const {
  static const std::string empty;
  if (const auto* s = std::get_if<std::string>(&value_)) return *s;
  return empty;
}

std::string Param::to_string() const {
  if (is_literal()) return std::to_string(std::get<Cycles>(value_));
  return std::get<std::string>(value_);
}

std::strong_ordering operator<=>(const Param& a, const Param& b) {
  if (a.is_literal() != b.is_literal()) return a.is_literal() ? std::strong_ordering::less : std::strong_ordering::greater;
  if (a.is_literal()) return std::get<Cycles>(a.value_) <=> std::get<Cycles>(b.value_);
  return std::get<std::string>(a.value_).compare(std::get<std::string>(b.value_)) <=> 0;
}

std::ostream& operator<<(std::ostream& os, const Param& p) { return os << p.to_string(); }

}  // namespace symwcet
