#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace confalg {

enum class ErrorCode {
  DuplicateBinding,
  ArityMismatch,
  ModuleMismatch,
  RankMismatch,
  ShapeMismatch,
  NotAssociative,
  NotBimodule,
  NotCocycle,
  NotOOperator,
  NotTwistedRB,
  NotNijenhuis,
  NotDerivation,
  NotDendriform,
  NotNilpotentWithinBound,
  NotInvertible,
  PreconditionFailed,
  Syntax,
  Unresolved,
  Duplicate,
};

constexpr std::string_view to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::DuplicateBinding: return "DuplicateBinding";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::ModuleMismatch: return "ModuleMismatch";
    case ErrorCode::RankMismatch: return "RankMismatch";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NotAssociative: return "NotAssociative";
    case ErrorCode::NotBimodule: return "NotBimodule";
    case ErrorCode::NotCocycle: return "NotCocycle";
    case ErrorCode::NotOOperator: return "NotOOperator";
    case ErrorCode::NotTwistedRB: return "NotTwistedRB";
    case ErrorCode::NotNijenhuis: return "NotNijenhuis";
    case ErrorCode::NotDerivation: return "NotDerivation";
    case ErrorCode::NotDendriform: return "NotDendriform";
    case ErrorCode::NotNilpotentWithinBound: return "NotNilpotentWithinBound";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::Syntax: return "SyntaxError";
    case ErrorCode::Unresolved: return "UnresolvedReference";
    case ErrorCode::Duplicate: return "DuplicateDefinition";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace confalg
