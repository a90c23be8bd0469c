#include "recon/error.hpp"

namespace recon {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ZeroInput: return "ZeroInput";
    case ErrorKind::NotNeighbors: return "NotNeighbors";
    case ErrorKind::NotModularRelated: return "NotModularRelated";
    case ErrorKind::NotSplittable: return "NotSplittable";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::NonUnimodular: return "NonUnimodular";
    case ErrorKind::IncompleteDomain: return "IncompleteDomain";
    case ErrorKind::InvalidBase: return "InvalidBase";
    case ErrorKind::NotCongruent: return "NotCongruent";
    case ErrorKind::NoRealRoot: return "NoRealRoot";
    case ErrorKind::Degenerate: return "Degenerate";
    case ErrorKind::NotPlanar: return "NotPlanar";
    case ErrorKind::NotConvex: return "NotConvex";
    case ErrorKind::DegenerateTriangle: return "DegenerateTriangle";
    case ErrorKind::Collinear: return "Collinear";
    case ErrorKind::Inconsistent: return "Inconsistent";
    case ErrorKind::NotConvexResult: return "NotConvexResult";
    case ErrorKind::InfeasiblePlacement: return "InfeasiblePlacement";
    case ErrorKind::TriangleViolation: return "TriangleViolation";
    case ErrorKind::LargestRootViolation: return "LargestRootViolation";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

}  // namespace recon
