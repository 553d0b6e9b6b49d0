#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rotlaw {

enum class ErrorKind {
  InvalidInput,
  RationalAngle,
  PrefixExhausted,
  RatioOutOfRange,
  DuplicateBreakpoint,
  EmptyPartition,
  NotAtomic,
  RelationNotSatisfied,
  DepthOverflow,
  NotFound,
  NotPisot,
  NonIntegerB,
  DegreeTooLarge,
  InjectivityNotVerified,
};

std::string_view to_string(ErrorKind kind);

class LabError : public std::runtime_error {
 public:
  LabError(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::RationalAngle: return "RationalAngle";
    case ErrorKind::PrefixExhausted: return "PrefixExhausted";
    case ErrorKind::RatioOutOfRange: return "RatioOutOfRange";
    case ErrorKind::DuplicateBreakpoint: return "DuplicateBreakpoint";
    case ErrorKind::EmptyPartition: return "EmptyPartition";
    case ErrorKind::NotAtomic: return "NotAtomic";
    case ErrorKind::RelationNotSatisfied: return "RelationNotSatisfied";
    case ErrorKind::DepthOverflow: return "DepthOverflow";
    case ErrorKind::NotFound: return "NotFound";
    case ErrorKind::NotPisot: return "NotPisot";
    case ErrorKind::NonIntegerB: return "NonIntegerB";
    case ErrorKind::DegreeTooLarge: return "DegreeTooLarge";
    case ErrorKind::InjectivityNotVerified: return "InjectivityNotVerified";
  }
  return "Unknown";
}

}  // namespace rotlaw
