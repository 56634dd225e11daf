#include "comdyn/error.hpp"

namespace comdyn {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::MixedFields: return "MixedFields";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::ZeroInput: return "ZeroInput";
    case ErrorCode::FactorizationLimitExceeded: return "FactorizationLimitExceeded";
    case ErrorCode::InvalidFieldSpec: return "InvalidFieldSpec";
    case ErrorCode::UnsupportedField: return "UnsupportedField";
    case ErrorCode::UnsupportedOrder: return "UnsupportedOrder";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DegreeTooSmall: return "DegreeTooSmall";
    case ErrorCode::InvalidChart: return "InvalidChart";
    case ErrorCode::NotPolynomialOnChart: return "NotPolynomialOnChart";
    case ErrorCode::NotHomogeneous: return "NotHomogeneous";
    case ErrorCode::ExplosionGuard: return "ExplosionGuard";
    case ErrorCode::StrategyInapplicable: return "StrategyInapplicable";
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::NotCommuting: return "NotCommuting";
    case ErrorCode::StreamExhausted: return "StreamExhausted";
    case ErrorCode::SingularFrame: return "SingularFrame";
    case ErrorCode::NotPeriodic: return "NotPeriodic";
    case ErrorCode::NoGoodPrime: return "NoGoodPrime";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownVariable: return "UnknownVariable";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

StreamExhausted::StreamExhausted(std::size_t rank, std::size_t needed)
    : Error(ErrorCode::StreamExhausted,
            "point stream exhausted at rank " + std::to_string(rank) + " of " +
                std::to_string(needed)),
      rank_(rank),
      needed_(needed) {}

SyntaxError::SyntaxError(std::size_t position, const std::string& expected)
    : Error(ErrorCode::SyntaxError,
            "syntax error at position " + std::to_string(position) +
                ": expected " + expected),
      position_(position),
      expected_(expected) {}

}  // namespace comdyn
