#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace recon {

enum class ErrorKind {
  ZeroInput,
  NotNeighbors,
  NotModularRelated,
  NotSplittable,
  DomainError,
  NonUnimodular,
  IncompleteDomain,
  InvalidBase,
  NotCongruent,
  NoRealRoot,
  Degenerate,
  NotPlanar,
  NotConvex,
  DegenerateTriangle,
  Collinear,
  Inconsistent,
  NotConvexResult,
  InfeasiblePlacement,
  TriangleViolation,
  LargestRootViolation,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

// Every precondition failure in the library is reported through this type;
// callers switch on kind() rather than on the message text.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace recon
