#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace symdiff {

enum class ErrorCode {
  DomainMismatch,
  DivisionByZero,
  NonUnitDivisor,
  NotDVRDomain,
  InvalidLift,
  RingMismatch,
  NoParameterT,
  InexactDivision,
  NonProperIdeal,
  UnsupportedDomain,
  ParseError,
  UndeclaredVariable,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the engine carries one of the codes above.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

/// Parse failures remember where they happened (1-based line and column).
class ParseError : public Error {
public:
  ParseError(ErrorCode code, const std::string& message, std::size_t line, std::size_t column)
      : Error(code, message + " at line " + std::to_string(line) + ", column " +
                        std::to_string(column)),
        line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
  case ErrorCode::DomainMismatch: return "DomainMismatch";
  case ErrorCode::DivisionByZero: return "DivisionByZero";
  case ErrorCode::NonUnitDivisor: return "NonUnitDivisor";
  case ErrorCode::NotDVRDomain: return "NotDVRDomain";
  case ErrorCode::InvalidLift: return "InvalidLift";
  case ErrorCode::RingMismatch: return "RingMismatch";
  case ErrorCode::NoParameterT: return "NoParameterT";
  case ErrorCode::InexactDivision: return "InexactDivision";
  case ErrorCode::NonProperIdeal: return "NonProperIdeal";
  case ErrorCode::UnsupportedDomain: return "UnsupportedDomain";
  case ErrorCode::ParseError: return "ParseError";
  case ErrorCode::UndeclaredVariable: return "UndeclaredVariable";
  case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

} // namespace symdiff
