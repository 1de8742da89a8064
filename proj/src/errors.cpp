#include "eit/errors.hpp"

namespace eit {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::InvalidState: return "InvalidState";
    case ErrorKind::DegenerateNullSpace: return "DegenerateNullSpace";
    case ErrorKind::SingularSolve: return "SingularSolve";
    case ErrorKind::StepTooLarge: return "StepTooLarge";
    case ErrorKind::PumpDetuningUnsupported: return "PumpDetuningUnsupported";
    case ErrorKind::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorKind::GridTooCoarse: return "GridTooCoarse";
    case ErrorKind::UndefinedAngle: return "UndefinedAngle";
    case ErrorKind::UnsupportedConfiguration: return "UnsupportedConfiguration";
  }
  return "Unknown";
}

}  // namespace eit
