#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ietlab {

enum class ErrorKind {
  PrecisionExhausted,
  PrecisionTooLow,
  RationalInput,
  OutOfDomain,
  OrbitBudgetExceeded,
  QuadratureBudgetExceeded,
  DegenerateCase,
  HorizonExceeded,
  NotACoboundary,
  IndexOutOfRange,
  TargetOutsideLargeBase,
  BetaInSmallTower,
  DegenerateXiSets,
  JumpNotNormalized,
  SmallDivisorBreakdown,
  InsufficientDepth,
  InvalidArgument,
  ConfigError,
};

std::string_view to_string(ErrorKind k);

// numeric failures map to CLI exit code 2, validation failures to 1
bool is_numeric_failure(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::string field = {})
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        detail_(message),
        field_(std::move(field)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& detail() const noexcept { return detail_; }
  // config field that triggered the error, empty when not applicable
  const std::string& field() const noexcept { return field_; }

 private:
  ErrorKind kind_;
  std::string detail_;
  std::string field_;
};

}  // namespace ietlab
