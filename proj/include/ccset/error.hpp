#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ccset {

enum class ErrorKind {
  CollinearInput,
  DegeneratePair,
  NoUniqueFixedPoint,
  EveryPointFixed,
  DegenerateCandidate,
  UndefinedCotangent,
  UnsupportedPeriodOne,
  InvalidBlock,
  OutOfRange,
  DegenerateDoubling,
  CollinearStep,
  NotIsosceles,
  ZeroApex,
  TooFewPoints,
  EqualParameters,
  InvalidPatch,
  InsufficientSequence,
  DegenerateTriple,
  ResolutionTooCoarse,
  CollinearSeed,
  BudgetExceeded,
  ParseError,
  InvalidArgument,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::CollinearInput: return "CollinearInput";
    case ErrorKind::DegeneratePair: return "DegeneratePair";
    case ErrorKind::NoUniqueFixedPoint: return "NoUniqueFixedPoint";
    case ErrorKind::EveryPointFixed: return "EveryPointFixed";
    case ErrorKind::DegenerateCandidate: return "DegenerateCandidate";
    case ErrorKind::UndefinedCotangent: return "UndefinedCotangent";
    case ErrorKind::UnsupportedPeriodOne: return "UnsupportedPeriodOne";
    case ErrorKind::InvalidBlock: return "InvalidBlock";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::DegenerateDoubling: return "DegenerateDoubling";
    case ErrorKind::CollinearStep: return "CollinearStep";
    case ErrorKind::NotIsosceles: return "NotIsosceles";
    case ErrorKind::ZeroApex: return "ZeroApex";
    case ErrorKind::TooFewPoints: return "TooFewPoints";
    case ErrorKind::EqualParameters: return "EqualParameters";
    case ErrorKind::InvalidPatch: return "InvalidPatch";
    case ErrorKind::InsufficientSequence: return "InsufficientSequence";
    case ErrorKind::DegenerateTriple: return "DegenerateTriple";
    case ErrorKind::ResolutionTooCoarse: return "ResolutionTooCoarse";
    case ErrorKind::CollinearSeed: return "CollinearSeed";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a kind so callers (and the
/// CLI's machine-readable error line) can dispatch without parsing text.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ccset
