#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gcx {

enum class ErrorKind {
  SyntaxError,
  UnknownVariable,
  NonPolynomial,
  IndexOutOfRange,
  PoleAtPoint,
  ZeroPolynomial,
  NotUnivariate,
  DegreeTooHigh,
  NotMonomial,
  DimensionMismatch,
  CriticalPointDetected,
  HasCriticalPoint,
  NumericalFailure,
  PoleEncountered,
  NonFinite,
  IterationCap,
  BadInput,
  Internal,
};

/// Single exception type for the whole library; `kind` selects the failure
/// class and `position` carries a byte offset for parse errors (npos otherwise).
class Error : public std::runtime_error {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  Error(ErrorKind kind, std::string message, std::size_t position = npos)
      : std::runtime_error(std::move(message)), kind_(kind), position_(position) {}

  ErrorKind kind() const { return kind_; }
  std::size_t position() const { return position_; }

 private:
  ErrorKind kind_;
  std::size_t position_;
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownVariable: return "UnknownVariable";
    case ErrorKind::NonPolynomial: return "NonPolynomial";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::PoleAtPoint: return "PoleAtPoint";
    case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorKind::NotUnivariate: return "NotUnivariate";
    case ErrorKind::DegreeTooHigh: return "DegreeTooHigh";
    case ErrorKind::NotMonomial: return "NotMonomial";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::CriticalPointDetected: return "CriticalPointDetected";
    case ErrorKind::HasCriticalPoint: return "HasCriticalPoint";
    case ErrorKind::NumericalFailure: return "NumericalFailure";
    case ErrorKind::PoleEncountered: return "PoleEncountered";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::IterationCap: return "IterationCap";
    case ErrorKind::BadInput: return "BadInput";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace gcx
