#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ecic {

enum class ErrorKind {
  NotPrimePower,
  CapExceeded,
  BudgetExceeded,
  NoSolution,
  WeightCapExceeded,
  MalformedDocument,
  DemandInSideInfo,
  IndexOutOfRange,
  EmptySet,
  LengthMismatch,
  Unknown,
  InvalidInnerIC,
  OuterDistanceTooSmall,
  OutOfRegime,
  InternalContradiction,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotPrimePower: return "NotPrimePower";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::NoSolution: return "NoSolution";
    case ErrorKind::WeightCapExceeded: return "WeightCapExceeded";
    case ErrorKind::MalformedDocument: return "MalformedDocument";
    case ErrorKind::DemandInSideInfo: return "DemandInSideInfo";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::EmptySet: return "EmptySet";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::Unknown: return "Unknown";
    case ErrorKind::InvalidInnerIC: return "InvalidInnerIC";
    case ErrorKind::OuterDistanceTooSmall: return "OuterDistanceTooSmall";
    case ErrorKind::OutOfRegime: return "OutOfRegime";
    case ErrorKind::InternalContradiction: return "InternalContradiction";
  }
  return "?";
}

/// Single exception type for the library; `kind()` tells callers which contract failed.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// Budget-style failures: the answer exists but was not computed within limits.
  bool is_budget() const noexcept {
    return kind_ == ErrorKind::BudgetExceeded || kind_ == ErrorKind::CapExceeded ||
           kind_ == ErrorKind::Unknown;
  }

 private:
  ErrorKind kind_;
};

}  // namespace ecic
