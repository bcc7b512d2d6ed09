#include "dengfan/errors.hpp"

namespace dengfan {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::NonPositiveEnergy: return "NonPositiveEnergy";
    case ErrorCode::PoleAtC: return "PoleAtC";
    case ErrorCode::PoleAtNonPositiveInteger: return "PoleAtNonPositiveInteger";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::ConnectionDegenerate: return "ConnectionDegenerate";
    case ErrorCode::SingularMatching: return "SingularMatching";
    case ErrorCode::DegenerateBasis: return "DegenerateBasis";
    case ErrorCode::BoundaryNotDecayed: return "BoundaryNotDecayed";
    case ErrorCode::StepTooCoarse: return "StepTooCoarse";
  }
  return "Unknown";
}

}  // namespace dengfan
