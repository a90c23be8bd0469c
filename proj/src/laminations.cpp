#include "recon/laminations.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "recon/error.hpp"

namespace recon {

namespace {

template <class V>
V absval(const V& v) {
  return v < 0 ? V(-v) : v;
}

template <class V>
std::string num_str(const V& v) {
  if constexpr (std::is_same_v<V, Rational>) {
    return to_string(v);
  } else {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
  }
}

template <class V>
double as_double(const V& v) {
  if constexpr (std::is_same_v<V, Rational>) {
    return to_double(v);
  } else {
    return v;
  }
}

template <class V>
const V& bvalue(const std::map<std::string, V>& boundary, const std::string& label) {
  auto it = boundary.find(label);
  if (it == boundary.end()) throw Error(ErrorKind::IncompleteDomain, "missing boundary value '" + label + "'");
  return it->second;
}

// Candidates contributed by one interior slope α with value fa.
template <class V>
void slope_terms(SurfaceTag surface, const std::map<std::string, V>& boundary, const Slope& alpha, const V& fa,
                 V& best) {
  best = std::max(best, V(2 * fa));
  if (surface == SurfaceTag::S04) {
    for (const auto& pair : boundary_pairing(alpha).pairs) {
      const V term = fa + bvalue(boundary, "b" + std::to_string(pair[0])) +
                     bvalue(boundary, "b" + std::to_string(pair[1]));
      best = std::max(best, term);
    }
  }
}

template <class V>
V boundary_terms(SurfaceTag surface, const std::map<std::string, V>& boundary) {
  if (surface == SurfaceTag::T11) return bvalue(boundary, "b");
  V best{0}, total{0};
  for (int s = 1; s <= 4; ++s) {
    const V& b = bvalue(boundary, "b" + std::to_string(s));
    best = std::max(best, V(2 * b));
    total += b;
  }
  return std::max(best, total);
}

template <class V>
bool equal_within(const V& lhs, const V& rhs, double tol, double& residual) {
  const double scale = std::max(std::fabs(as_double(lhs)), std::fabs(as_double(rhs)));
  residual = relative(std::fabs(as_double(V(lhs - rhs))), scale);
  if constexpr (std::is_same_v<V, Rational>) {
    return lhs == rhs;
  } else {
    return residual <= tol;
  }
}

}  // namespace

template <class V>
BasicIntersectionFunction<V> from_weighted(SurfaceTag surface, const WeightedSlope<V>& w, int max_height) {
  if (w.x == 0 && w.y == 0) throw Error(ErrorKind::DomainError, "direction must be nonzero");
  if (!(w.weight > 0)) throw Error(ErrorKind::DomainError, "weight must be positive");
  BasicIntersectionFunction<V> f;
  f.surface = surface;
  for (const std::string& label : surface == SurfaceTag::T11 ? std::vector<std::string>{"b"}
                                                              : std::vector<std::string>{"b1", "b2", "b3", "b4"}) {
    f.boundary[label] = V{0};
  }
  const V factor = surface == SurfaceTag::S04 ? V{2} : V{1};
  std::vector<Slope> slopes = enumerate_slopes(std::max(max_height, 2));
  for (const Slope& s : slopes) {
    if (s.height() > max_height && !FareyTriangle::base().contains(s)) continue;
    V p, q;
    if constexpr (std::is_same_v<V, Rational>) {
      p = Rational(s.p());
      q = Rational(s.q());
    } else {
      p = to_double(s.p());
      q = to_double(s.q());
    }
    f.values[s] = factor * w.weight * absval(V(p * w.y - q * w.x));
  }
  return f;
}

template <class V>
V flip_max(SurfaceTag surface, const std::map<std::string, V>& boundary, const Slope& a, const V& fa,
           const Slope& b, const V& fb) {
  V best = boundary_terms(surface, boundary);
  slope_terms(surface, boundary, a, fa, best);
  slope_terms(surface, boundary, b, fb, best);
  return best;
}

template <class V>
V triangle_max(SurfaceTag surface, const std::map<std::string, V>& boundary, const FareyTriangle& tri,
               const std::array<V, 3>& f) {
  V best = boundary_terms(surface, boundary);
  slope_terms(surface, boundary, tri.a, f[0], best);
  slope_terms(surface, boundary, tri.b, f[1], best);
  slope_terms(surface, boundary, tri.c, f[2], best);
  return best;
}

template <class V>
BasicIntersectionFunction<V> propagate(SurfaceTag surface, const std::array<V, 3>& base,
                                       const std::map<std::string, V>& boundary, int max_height) {
  BasicIntersectionFunction<V> f;
  f.surface = surface;
  f.boundary = boundary;
  const FareyTriangle tri = FareyTriangle::base();
  const V lhs = base[0] + base[1] + base[2];
  const V rhs = triangle_max(surface, boundary, tri, base);
  double residual = 0;
  if (!equal_within(lhs, rhs, 1e-12, residual)) {
    throw Error(ErrorKind::InvalidBase, "base sum " + num_str(lhs) + " differs from max term " + num_str(rhs));
  }
  f.values[tri.a] = base[0];
  f.values[tri.b] = base[1];
  f.values[tri.c] = base[2];
  for (const FareyFlip& fl : flip_tree(max_height)) {
    const V& x = f.values.at(fl.left);
    const V& y = f.values.at(fl.right);
    f.values[fl.new_vertex] = flip_max(surface, boundary, fl.left, x, fl.right, y) - f.values.at(fl.old_vertex);
  }
  return f;
}

template <class V>
VerificationReport verify_intersection(const BasicIntersectionFunction<V>& f, double tol) {
  std::set<Slope> domain;
  for (const auto& [s, v] : f.values) domain.insert(s);
  const SlopeComplex cx = complex_within(domain);
  if (!cx.isolated.empty()) {
    throw Error(ErrorKind::IncompleteDomain, "slope " + cx.isolated.front().str() + " lies in no triangle of the domain");
  }
  boundary_terms(f.surface, f.boundary);

  VerificationReport report;
  for (const FareyTriangle& tri : cx.triangles) {
    const std::array<V, 3> vals{f.values.at(tri.a), f.values.at(tri.b), f.values.at(tri.c)};
    const V lhs = vals[0] + vals[1] + vals[2];
    const V rhs = triangle_max(f.surface, f.boundary, tri, vals);
    double residual = 0;
    if (equal_within(lhs, rhs, tol, residual)) {
      report.observe(residual);
    } else {
      report.fail({"triangle (" + tri.a.str() + ", " + tri.b.str() + ", " + tri.c.str() + "): sum " + num_str(lhs) +
                       " vs max " + num_str(rhs),
                   "triangle", residual, {tri.a, tri.b, tri.c}});
    }
    ++report.checked_triangles;
  }
  for (const FareyQuad& q : cx.quads) {
    const V& x = f.values.at(q.a);
    const V& y = f.values.at(q.b);
    const V lhs = f.values.at(q.gamma) + f.values.at(q.gamma_prime);
    const V rhs = flip_max(f.surface, f.boundary, q.a, x, q.b, y);
    double residual = 0;
    if (equal_within(lhs, rhs, tol, residual)) {
      report.observe(residual);
    } else {
      report.fail({"flip {" + q.a.str() + ", " + q.b.str() + "}: " + q.gamma.str() + " <-> " + q.gamma_prime.str() +
                       ": sum " + num_str(lhs) + " vs max " + num_str(rhs),
                   "flip", residual, {q.a, q.b, q.gamma, q.gamma_prime}});
    }
    ++report.checked_flips;
  }
  for (const auto& [s, v] : f.values) {
    if (v < 0) report.fail({"f(" + s.str() + ") = " + num_str(v) + " is negative", "range", as_double(V(-v)), {s}});
  }
  for (const auto& [label, v] : f.boundary) {
    if (v < 0) report.fail({"f(" + label + ") = " + num_str(v) + " is negative", "range", as_double(V(-v)), {}});
  }
  report.finalize();
  return report;
}

#define RECON_INSTANTIATE(V)                                                                                       \
  template BasicIntersectionFunction<V> from_weighted<V>(SurfaceTag, const WeightedSlope<V>&, int);                \
  template V flip_max<V>(SurfaceTag, const std::map<std::string, V>&, const Slope&, const V&, const Slope&,        \
                         const V&);                                                                                \
  template V triangle_max<V>(SurfaceTag, const std::map<std::string, V>&, const FareyTriangle&,                   \
                             const std::array<V, 3>&);                                                             \
  template BasicIntersectionFunction<V> propagate<V>(SurfaceTag, const std::array<V, 3>&,                          \
                                                     const std::map<std::string, V>&, int);                        \
  template VerificationReport verify_intersection<V>(const BasicIntersectionFunction<V>&, double);

RECON_INSTANTIATE(double)
RECON_INSTANTIATE(Rational)

#undef RECON_INSTANTIATE

}  // namespace recon
