#pragma once

#include <stdexcept>
#include <string>

namespace antplan {

// Every failure the library reports deliberately. Callers that only care
// about "did it work" can catch antplan::Error; callers that branch on the
// failure kind check code().
enum class ErrorCode {
  // task_model
  ParseError,
  DuplicateTask,
  LengthTooLarge,
  // anticipation
  PrefixMismatch,
  UnknownTask,
  NetworkError,
  AuthError,
  MalformedReply,
  // metrics
  EmptyTruth,
  TooFewCommon,
  EmptyList,
  // pddl_core
  LexError,
  TypeError,
  UnsupportedFeature,
  GoalUsesUnknownObject,
  GroundingError,
  NotApplicable,
  // planner
  BudgetExceeded,
  // household
  GoalConflict,
  UnknownGoalKey,
  // harness
  PlanningFailed,
  ReplanFailed,
  IoError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace antplan
