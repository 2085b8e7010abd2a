#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace toral {

enum class ErrorKind {
  NotSquare,
  NotUnimodular,
  NotHyperbolic,
  DegreeOutOfRange,
  IllConditioned,
  CapExceeded,
  InsufficientData,
  BoundViolated,
  ParseError,
  IoError,
};

std::string_view error_name(ErrorKind kind) noexcept;

/// Library-wide exception. The kind names match the CLI's stderr tokens.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(error_name(kind)) + ": " + detail), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return error_name(kind_); }

 private:
  ErrorKind kind_;
};

inline std::string_view error_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotSquare: return "NotSquare";
    case ErrorKind::NotUnimodular: return "NotUnimodular";
    case ErrorKind::NotHyperbolic: return "NotHyperbolic";
    case ErrorKind::DegreeOutOfRange: return "DegreeOutOfRange";
    case ErrorKind::IllConditioned: return "IllConditioned";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::InsufficientData: return "InsufficientData";
    case ErrorKind::BoundViolated: return "BoundViolated";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace toral
