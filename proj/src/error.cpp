#include "egregium/error.hpp"

namespace egregium {

std::string_view error_kind_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::ModelDomain: return "ModelDomainError";
    case ErrorKind::Domain: return "DomainError";
    case ErrorKind::DegenerateGradient: return "DegenerateGradient";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::RankDeficientJacobian: return "RankDeficientJacobian";
    case ErrorKind::EigensolveFailure: return "EigensolveFailure";
    case ErrorKind::SingularMetric: return "SingularMetric";
    case ErrorKind::FrameNotOrthonormal: return "FrameNotOrthonormal";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::Index: return "IndexError";
    case ErrorKind::NonRealRoots: return "NonRealRoots";
    case ErrorKind::Parity: return "ParityError";
    case ErrorKind::Range: return "RangeError";
    case ErrorKind::AllOddDegenerate: return "AllOddDegenerate";
    case ErrorKind::NegativeSquare: return "NegativeSquare";
    case ErrorKind::RankTooLow: return "RankTooLow";
    case ErrorKind::NotRealizable: return "NotRealizable";
    case ErrorKind::NotClosedSurface: return "NotClosedSurface";
    case ErrorKind::SpecParse: return "SpecParseError";
  }
  return "UnknownError";
}

}  // namespace egregium
