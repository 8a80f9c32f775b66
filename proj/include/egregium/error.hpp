#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace egregium {

enum class ErrorKind {
  ModelDomain,
  Domain,
  DegenerateGradient,
  NoConvergence,
  RankDeficientJacobian,
  EigensolveFailure,
  SingularMetric,
  FrameNotOrthonormal,
  DimensionMismatch,
  Index,
  NonRealRoots,
  Parity,
  Range,
  AllOddDegenerate,
  NegativeSquare,
  RankTooLow,
  NotRealizable,
  NotClosedSurface,
  SpecParse,
};

std::string_view error_kind_name(ErrorKind kind) noexcept;

/// Every recoverable failure in the library is reported through this type;
/// callers that need to render structured diagnostics switch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace egregium
