#include "steklov/error.hpp"

namespace steklov {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::NotCoercive: return "NotCoercive";
    case ErrorCode::NonpositiveT: return "NonpositiveT";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::ConvexificationFailed: return "ConvexificationFailed";
    case ErrorCode::MissingBracket: return "MissingBracket";
    case ErrorCode::MissingSecondDerivative: return "MissingSecondDerivative";
    case ErrorCode::UnboundedCurvature: return "UnboundedCurvature";
    case ErrorCode::NoBracket: return "NoBracket";
    case ErrorCode::InvalidProblem: return "InvalidProblem";
  }
  return "Unknown";
}

}  // namespace steklov
