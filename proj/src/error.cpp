#include "ietlab/error.hpp"

namespace ietlab {

std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::PrecisionTooLow: return "PrecisionTooLow";
    case ErrorKind::RationalInput: return "RationalInput";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::OrbitBudgetExceeded: return "OrbitBudgetExceeded";
    case ErrorKind::QuadratureBudgetExceeded: return "QuadratureBudgetExceeded";
    case ErrorKind::DegenerateCase: return "DegenerateCase";
    case ErrorKind::HorizonExceeded: return "HorizonExceeded";
    case ErrorKind::NotACoboundary: return "NotACoboundary";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::TargetOutsideLargeBase: return "TargetOutsideLargeBase";
    case ErrorKind::BetaInSmallTower: return "BetaInSmallTower";
    case ErrorKind::DegenerateXiSets: return "DegenerateXiSets";
    case ErrorKind::JumpNotNormalized: return "JumpNotNormalized";
    case ErrorKind::SmallDivisorBreakdown: return "SmallDivisorBreakdown";
    case ErrorKind::InsufficientDepth: return "InsufficientDepth";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

bool is_numeric_failure(ErrorKind k) {
  switch (k) {
    case ErrorKind::PrecisionExhausted:
    case ErrorKind::PrecisionTooLow:
    case ErrorKind::OrbitBudgetExceeded:
    case ErrorKind::QuadratureBudgetExceeded:
    case ErrorKind::HorizonExceeded:
    case ErrorKind::SmallDivisorBreakdown:
    case ErrorKind::NotACoboundary:
    case ErrorKind::DegenerateXiSets:
      return true;
    default:
      return false;
  }
}

}  // namespace ietlab
