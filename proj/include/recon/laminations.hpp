#pragma once

#include <array>
#include <map>
#include <string>

#include "recon/farey.hpp"
#include "recon/loopcalc.hpp"
#include "recon/numeric.hpp"
#include "recon/report.hpp"

namespace recon {

// V is double or Rational. Boundary labels follow the trace functions: "b"
// for T11, "b1".."b4" for S04.
template <class V>
struct BasicIntersectionFunction {
  SurfaceTag surface = SurfaceTag::T11;
  std::map<std::string, V> boundary;
  std::map<Slope, V> values;
};

using IntersectionFunction = BasicIntersectionFunction<double>;
using ExactIntersectionFunction = BasicIntersectionFunction<Rational>;

template <class V>
struct WeightedSlope {
  V x{1}, y{0};
  V weight{1};
};

/// f(p/q) = weight·|p·y − q·x|, doubled on S04; boundary values 0.
template <class V>
BasicIntersectionFunction<V> from_weighted(SurfaceTag surface, const WeightedSlope<V>& w, int max_height);

/// Right-hand side of the flip relation across edge {a, b}; the new value is
/// this minus the value at the old vertex.
template <class V>
V flip_max(SurfaceTag surface, const std::map<std::string, V>& boundary, const Slope& a, const V& fa,
           const Slope& b, const V& fb);

/// Right-hand side of the triangle relation.
template <class V>
V triangle_max(SurfaceTag surface, const std::map<std::string, V>& boundary, const FareyTriangle& tri,
               const std::array<V, 3>& f);

/// base = values at (1/0, 0/1, 1/1). Throws InvalidBase when the triangle
/// relation fails on the base (exactly for Rational, to 1e-12 relative for double).
template <class V>
BasicIntersectionFunction<V> propagate(SurfaceTag surface, const std::array<V, 3>& base,
                                       const std::map<std::string, V>& boundary, int max_height);

/// Triangle and flip relations on the whole domain, plus nonnegativity.
/// Throws IncompleteDomain as for trace functions.
template <class V>
VerificationReport verify_intersection(const BasicIntersectionFunction<V>& f, double tol = 1e-9);

}  // namespace recon
