#include "flipforge/error.hpp"

namespace flipforge {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegenerateBase: return "DegenerateBase";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::DegenerateLift: return "DegenerateLift";
    case ErrorCode::DegenerateDirection: return "DegenerateDirection";
    case ErrorCode::EdgeNotInTriangulation: return "EdgeNotInTriangulation";
    case ErrorCode::HullEdge: return "HullEdge";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::NotMonotone: return "NotMonotone";
    case ErrorCode::NotStuck: return "NotStuck";
    case ErrorCode::OutsideDomain: return "OutsideDomain";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::NoExtremePair: return "NoExtremePair";
    case ErrorCode::ProjectionCollision: return "ProjectionCollision";
    case ErrorCode::NonTriangulatedSilhouette: return "NonTriangulatedSilhouette";
    case ErrorCode::GenerationFailed: return "GenerationFailed";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace flipforge
