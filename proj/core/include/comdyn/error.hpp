#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace comdyn {

enum class ErrorCode {
  MixedFields,
  DivisionByZero,
  ZeroInput,
  FactorizationLimitExceeded,
  InvalidFieldSpec,
  UnsupportedField,
  UnsupportedOrder,
  DimensionMismatch,
  DegreeTooSmall,
  InvalidChart,
  NotPolynomialOnChart,
  NotHomogeneous,
  ExplosionGuard,
  StrategyInapplicable,
  NotClosed,
  NotCommuting,
  StreamExhausted,
  SingularFrame,
  NotPeriodic,
  NoGoodPrime,
  SyntaxError,
  UnknownVariable,
  FieldMismatch,
  InvalidArgument,
  Io,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Base of every library failure. The code is stable and machine readable;
/// the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised when a point source runs dry before the Veronese matrix reaches
/// full rank.
class StreamExhausted : public Error {
 public:
  StreamExhausted(std::size_t rank, std::size_t needed);

  std::size_t rank() const noexcept { return rank_; }
  std::size_t needed() const noexcept { return needed_; }

 private:
  std::size_t rank_;
  std::size_t needed_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& expected);

  std::size_t position() const noexcept { return position_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t position_;
  std::string expected_;
};

}  // namespace comdyn
