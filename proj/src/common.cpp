#include "rftswim/common.hpp"

namespace rftswim {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::DegenerateTangent: return "DegenerateTangent";
    case ErrorCode::NotUnitSpeed: return "NotUnitSpeed";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::InvalidDrag: return "InvalidDrag";
    case ErrorCode::SingularResistance: return "SingularResistance";
    case ErrorCode::AmplitudeOutOfRange: return "AmplitudeOutOfRange";
    case ErrorCode::BumpTooLong: return "BumpTooLong";
    case ErrorCode::RampDegenerate: return "RampDegenerate";
    case ErrorCode::NotStraightenable: return "NotStraightenable";
    case ErrorCode::TargetUnreachable: return "TargetUnreachable";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace rftswim
