#pragma once

#include <stdexcept>
#include <string>

namespace factorlab {

enum class ErrorCode {
  InvalidGroup,
  ElementGroupMismatch,
  InvalidModel,
  ElementModelMismatch,
  NotInMonoid,
  NotAtom,
  RankNotOne,
  HypothesesNotMet,
  SearchBudgetExceeded,
  ParseError,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidGroup: return "InvalidGroup";
    case ErrorCode::ElementGroupMismatch: return "ElementGroupMismatch";
    case ErrorCode::InvalidModel: return "InvalidModel";
    case ErrorCode::ElementModelMismatch: return "ElementModelMismatch";
    case ErrorCode::NotInMonoid: return "NotInMonoid";
    case ErrorCode::NotAtom: return "NotAtom";
    case ErrorCode::RankNotOne: return "RankNotOne";
    case ErrorCode::HypothesesNotMet: return "HypothesesNotMet";
    case ErrorCode::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace factorlab
