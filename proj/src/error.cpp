#include "phasedisc/error.hpp"

namespace phasedisc {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::PoleAtInput: return "PoleAtInput";
    case ErrorKind::CircleNotInsideDisc: return "CircleNotInsideDisc";
    case ErrorKind::IdenticalCircles: return "IdenticalCircles";
    case ErrorKind::NotIntersecting: return "NotIntersecting";
    case ErrorKind::EvaluationAtPole: return "EvaluationAtPole";
    case ErrorKind::DegenerateAlignment: return "DegenerateAlignment";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::ZeroOnBoundary: return "ZeroOnBoundary";
    case ErrorKind::EvaluationTooCloseToBoundary: return "EvaluationTooCloseToBoundary";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::ResidualTooLarge: return "ResidualTooLarge";
    case ErrorKind::PoleAmbiguity: return "PoleAmbiguity";
    case ErrorKind::DegreeCapExceeded: return "DegreeCapExceeded";
    case ErrorKind::PointsNotOnCommonCircle: return "PointsNotOnCommonCircle";
    case ErrorKind::ModulusMismatchOnCircle: return "ModulusMismatchOnCircle";
    case ErrorKind::ZeroOnCircle: return "ZeroOnCircle";
    case ErrorKind::UEqualsV: return "UEqualsV";
    case ErrorKind::InternalCheckFailed: return "InternalCheckFailed";
  }
  return "Unknown";
}

bool is_input_error(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument:
    case ErrorKind::ParseError:
    case ErrorKind::CircleNotInsideDisc:
    case ErrorKind::IdenticalCircles:
    case ErrorKind::NotIntersecting:
    case ErrorKind::PointsNotOnCommonCircle:
    case ErrorKind::ModulusMismatchOnCircle:
    case ErrorKind::ZeroOnCircle:
    case ErrorKind::ZeroOnBoundary:
    case ErrorKind::UEqualsV:
      return true;
    default:
      return false;
  }
}

}  // namespace phasedisc
