#include "symwcet/error.hpp"

namespace symwcet {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Syntax: return "syntax";
    case ErrorKind::InvalidProgram: return "invalid_program";
    case ErrorKind::UnknownBlock: return "unknown_block";
    case ErrorKind::DuplicateId: return "duplicate_id";
    case ErrorKind::IrreducibleLoop: return "irreducible";
    case ErrorKind::MissingLoopBound: return "missing_loop_bound";
    case ErrorKind::AmbiguousTarget: return "ambiguous_target";
    case ErrorKind::NonAncestorLoop: return "non_ancestor_loop";
    case ErrorKind::DuplicateVariantId: return "duplicate_variant_id";
    case ErrorKind::SymbolicValuePresent: return "symbolic_value_present";
    case ErrorKind::IncomparableLoops: return "incomparable_loops";
    case ErrorKind::NotMultiple: return "not_multiple";
    case ErrorKind::UnboundIdentifier: return "unbound_identifier";
    case ErrorKind::TypeMismatch: return "type_mismatch";
    case ErrorKind::UnknownLoop: return "unknown_loop";
    case ErrorKind::InvalidValue: return "invalid_value";
    case ErrorKind::Overflow: return "overflow";
    case ErrorKind::FuelExhausted: return "fuel_exhausted";
    case ErrorKind::PathBudgetExceeded: return "path_budget_exceeded";
  }
  return "unknown";
}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace symwcet
