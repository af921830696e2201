#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fibercone {

/// Everything that can go wrong, as a closed enum so front ends can render
/// a stable `error.kind` string without parsing messages.
enum class ErrorKind {
  NotCoprime,
  EmptyInput,
  NotMember,
  ExponentNotInSemigroup,
  MixedParents,
  ZeroIdeal,
  NegativePower,
  NotContained,
  BadParameters,
  UnitGenerator,
  ConstantTermGenerator,
  PrecisionExhausted,
  MixedRings,
  BudgetExceeded,
  StabilizationFailed,
  NotAReduction,
  NotAReductionWithin,
  BadDegrees,
  DimensionMismatch,
  NotSally,
  SyntaxError,
  UnknownVariable,
  UnknownIdeal,
  ConsistencyError,
};

inline std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotCoprime: return "NotCoprime";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::NotMember: return "NotMember";
    case ErrorKind::ExponentNotInSemigroup: return "ExponentNotInSemigroup";
    case ErrorKind::MixedParents: return "MixedParents";
    case ErrorKind::ZeroIdeal: return "ZeroIdeal";
    case ErrorKind::NegativePower: return "NegativePower";
    case ErrorKind::NotContained: return "NotContained";
    case ErrorKind::BadParameters: return "BadParameters";
    case ErrorKind::UnitGenerator: return "UnitGenerator";
    case ErrorKind::ConstantTermGenerator: return "ConstantTermGenerator";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::MixedRings: return "MixedRings";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::StabilizationFailed: return "StabilizationFailed";
    case ErrorKind::NotAReduction: return "NotAReduction";
    case ErrorKind::NotAReductionWithin: return "NotAReductionWithin";
    case ErrorKind::BadDegrees: return "BadDegrees";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotSally: return "NotSally";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownVariable: return "UnknownVariable";
    case ErrorKind::UnknownIdeal: return "UnknownIdeal";
    case ErrorKind::ConsistencyError: return "ConsistencyError";
  }
  return "Unknown";
}

class CalcError : public std::runtime_error {
 public:
  CalcError(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail),
        kind_(kind),
        detail_(detail) {}

  ErrorKind kind() const { return kind_; }
  const std::string& detail() const { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& detail) {
  throw CalcError(kind, detail);
}

inline void require(bool cond, ErrorKind kind, const std::string& detail) {
  if (!cond) fail(kind, detail);
}

}  // namespace fibercone
