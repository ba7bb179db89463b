#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace flipforge {

enum class ErrorCode {
  DegenerateBase,
  DegenerateInput,
  DegenerateLift,
  DegenerateDirection,
  EdgeNotInTriangulation,
  HullEdge,
  NotApplicable,
  NotMonotone,
  NotStuck,
  OutsideDomain,
  BudgetExceeded,
  NoExtremePair,
  ProjectionCollision,
  NonTriangulatedSilhouette,
  GenerationFailed,
  ParseError,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace flipforge
