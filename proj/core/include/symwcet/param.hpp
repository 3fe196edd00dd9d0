#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>

namespace symwcet {

/// Execution times and counts. All arithmetic on them is overflow-checked.
using Cycles = std::uint64_t;

Cycles checked_add(Cycles a, Cycles b);
Cycles checked_mul(Cycles a, Cycles b);

/// A value that is either a concrete non-negative integer or a named parameter
/// left for later instantiation (block WCETs, loop bounds, annotation maxima).
class Param {
 public:
  Param() : value_(Cycles{0}) {}
  Param(Cycles literal) : value_(literal) {}  // NOLINT(google-explicit-constructor)
  static Param identifier(std::string name);

  bool is_literal() const { return std::holds_alternative<Cycles>(value_); }
  bool is_symbolic() const { return !is_literal(); }
  Cycles literal() const;
  const std::string& name() const;

  std::optional<Cycles> as_literal() const {
    if (is_literal()) return literal();
    return std::nullopt;
  }

  std::string to_string() const;

  friend bool operator==(const Param&, const Param&) = default;
  friend std::strong_ordering operator<=>(const Param& a, const Param& b);

 private:
  std::variant<Cycles, std::string> value_;
};

std::ostream& operator<<(std::ostream& os, const Param& p);

}  // namespace symwcet
