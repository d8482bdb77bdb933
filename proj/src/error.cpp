#include "pathprob/error.hpp"

namespace pathprob {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SuperluminalSegment: return "SuperluminalSegment";
    case ErrorKind::DegenerateGrid: return "DegenerateGrid";
    case ErrorKind::BadInterval: return "BadInterval";
    case ErrorKind::EmptyVector: return "EmptyVector";
    case ErrorKind::TooFewPaths: return "TooFewPaths";
    case ErrorKind::KappaMismatch: return "KappaMismatch";
    case ErrorKind::SizeMismatch: return "SizeMismatch";
    case ErrorKind::InsufficientSamples: return "InsufficientSamples";
    case ErrorKind::AmbiguousData: return "AmbiguousData";
    case ErrorKind::ZeroEpsilon: return "ZeroEpsilon";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::HyperplaneViolation: return "HyperplaneViolation";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::NoFringes: return "NoFringes";
    case ErrorKind::PoorFit: return "PoorFit";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

}  // namespace pathprob
