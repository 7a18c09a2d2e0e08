#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qg {

enum class ErrorCode {
  DeadlockVertex,
  WeightOverflow,
  DuplicateEdge,
  EmptyTargetForMCR,
  BadName,
  SyntaxError,
  UndeclaredVertex,
  DuplicateVertex,
  CapExceeded,
  TooManyStrategies,
  Overflow,
  InfinityConflict,
  InvalidArgument,
  MissingTrace,
  StepBudgetExceeded,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Parser diagnostics carry a 1-based source position; column 0 means "whole line".
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, std::size_t line, std::size_t column, const std::string& message);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace qg
