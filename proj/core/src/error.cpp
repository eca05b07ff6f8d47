#include "antplan/error.hpp"

namespace antplan {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DuplicateTask: return "DuplicateTask";
    case ErrorCode::LengthTooLarge: return "LengthTooLarge";
    case ErrorCode::PrefixMismatch: return "PrefixMismatch";
    case ErrorCode::UnknownTask: return "UnknownTask";
    case ErrorCode::NetworkError: return "NetworkError";
    case ErrorCode::AuthError: return "AuthError";
    case ErrorCode::MalformedReply: return "MalformedReply";
    case ErrorCode::EmptyTruth: return "EmptyTruth";
    case ErrorCode::TooFewCommon: return "TooFewCommon";
    case ErrorCode::EmptyList: return "EmptyList";
    case ErrorCode::LexError: return "LexError";
    case ErrorCode::TypeError: return "TypeError";
    case ErrorCode::UnsupportedFeature: return "UnsupportedFeature";
    case ErrorCode::GoalUsesUnknownObject: return "GoalUsesUnknownObject";
    case ErrorCode::GroundingError: return "GroundingError";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::GoalConflict: return "GoalConflict";
    case ErrorCode::UnknownGoalKey: return "UnknownGoalKey";
    case ErrorCode::PlanningFailed: return "PlanningFailed";
    case ErrorCode::ReplanFailed: return "ReplanFailed";
    case ErrorCode::IoError: return "IoError";
  }
  return "Error";
}

}  // namespace antplan
