#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace symwcet {

/// Failure categories raised by the analyzer. The CLI maps them onto exit codes.
enum class ErrorKind {
  Syntax,             // malformed JSON or formula text
  InvalidProgram,     // structurally invalid CFG document
  UnknownBlock,
  DuplicateId,
  IrreducibleLoop,
  MissingLoopBound,
  AmbiguousTarget,
  NonAncestorLoop,
  DuplicateVariantId,
  SymbolicValuePresent,
  IncomparableLoops,
  NotMultiple,
  UnboundIdentifier,
  TypeMismatch,
  UnknownLoop,
  InvalidValue,
  Overflow,
  FuelExhausted,
  PathBudgetExceeded,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace symwcet
