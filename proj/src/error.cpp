#include "qg/error.hpp"

#include "qg/ext_value.hpp"

namespace qg {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DeadlockVertex: return "DeadlockVertex";
    case ErrorCode::WeightOverflow: return "WeightOverflow";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::EmptyTargetForMCR: return "EmptyTargetForMCR";
    case ErrorCode::BadName: return "BadName";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UndeclaredVertex: return "UndeclaredVertex";
    case ErrorCode::DuplicateVertex: return "DuplicateVertex";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::TooManyStrategies: return "TooManyStrategies";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::InfinityConflict: return "InfinityConflict";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::MissingTrace: return "MissingTrace";
    case ErrorCode::StepBudgetExceeded: return "StepBudgetExceeded";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

ParseError::ParseError(ErrorCode code, std::size_t line, std::size_t column, const std::string& message)
    : Error(code, "line " + std::to_string(line) + (column ? ", column " + std::to_string(column) : std::string()) +
                      ": " + message),
      line_(line),
      column_(column) {}

std::int64_t ExtValue::finite() const {
  if (!is_finite()) throw Error(ErrorCode::InvalidArgument, "value is infinite");
  return v_;
}

std::string ExtValue::to_string() const {
  if (v_ == kPos) return "+inf";
  if (v_ == kNeg) return "-inf";
  return std::to_string(v_);
}

}  // namespace qg
