#include "recon/loopcalc.hpp"

#include <cmath>
#include <numbers>

#include "recon/error.hpp"

namespace recon {

std::string_view to_string(SurfaceTag tag) { return tag == SurfaceTag::T11 ? "T11" : "S04"; }

SurfaceTag parse_surface(std::string_view text) {
  if (text == "T11") return SurfaceTag::T11;
  if (text == "S04") return SurfaceTag::S04;
  throw Error(ErrorKind::ParseError, "unknown surface '" + std::string(text) + "' (expected T11 or S04)");
}

Integer intersection(SurfaceTag surface, const Slope& a, const Slope& b) {
  Integer d = det(a, b);
  return surface == SurfaceTag::S04 ? Integer(2 * d) : d;
}

Slope multiply(const Slope& a, const Slope& b) {
  const Integer d = signed_det(a, b);
  if (abs(d) != 1) {
    throw Error(ErrorKind::NotModularRelated, a.str() + " · " + b.str() + " needs det 1, got " + abs(d).str());
  }
  return canonicalize(a.p() + d * b.p(), a.q() + d * b.q());
}

UniModMatrix twist_matrix(const Slope& a) {
  const Integer& p = a.p();
  const Integer& q = a.q();
  // I + (p, q)ᵀ·(−q, p)
  return {1 - p * q, p * p, -q * q, 1 + p * q};
}

int BoundaryPairing::partner(int label) const {
  for (const auto& pair : pairs) {
    if (pair[0] == label) return pair[1];
    if (pair[1] == label) return pair[0];
  }
  throw Error(ErrorKind::DomainError, "boundary label must be 1..4, got " + std::to_string(label));
}

std::string BoundaryPairing::str() const {
  auto pair_str = [](const std::array<int, 2>& p) {
    return "b" + std::to_string(p[0]) + ",b" + std::to_string(p[1]);
  };
  return "{" + pair_str(pairs[0]) + " | " + pair_str(pairs[1]) + "}";
}

BoundaryPairing boundary_pairing(const Slope& s) {
  BoundaryPairing out;
  out.parity_p = static_cast<int>(abs(s.p()) % 2);
  out.parity_q = static_cast<int>(abs(s.q()) % 2);
  if (out.parity_p == 1 && out.parity_q == 0) {
    out.pairs = {{{1, 2}, {3, 4}}};
  } else if (out.parity_p == 0 && out.parity_q == 1) {
    out.pairs = {{{1, 3}, {2, 4}}};
  } else {
    out.pairs = {{{1, 4}, {2, 3}}};
  }
  return out;
}

std::pair<Slope, Slope> lickorish_split(const Slope& a, const Slope& b) {
  const Integer n = det(a, b);
  if (n <= 1) {
    throw Error(ErrorKind::NotSplittable, a.str() + " and " + b.str() + " meet " + n.str() + " time(s)");
  }
  // Re-base so that a = 1/0; then det(a, x) is the denominator of x and the
  // last flip on the Farey path of b supplies its two parents.
  Integer x = 1, y = 0, r0 = a.p(), r1 = a.q(), s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    Integer quotient = r0 / r1, tmp = r0 - quotient * r1;
    r0 = r1;
    r1 = tmp;
    tmp = s0 - quotient * s1;
    s0 = s1;
    s1 = tmp;
    tmp = t0 - quotient * t1;
    t0 = t1;
    t1 = tmp;
  }
  x = r0 < 0 ? Integer(-s0) : s0;
  y = r0 < 0 ? Integer(-t0) : t0;
  const UniModMatrix rebase(x, y, -a.q(), a.p());
  const UniModMatrix back = rebase.inverse();
  const Slope target = apply(rebase, b);
  const FareyTriangle last = farey_path(target).back();
  std::vector<Slope> parents;
  for (const Slope& v : {last.a, last.b, last.c}) {
    if (!(v == target)) parents.push_back(apply(back, v));
  }
  if (multiply(parents[0], parents[1]) == b) return {parents[0], parents[1]};
  return {parents[1], parents[0]};
}

std::set<Slope> generate_closure(const std::set<Slope>& seed, int max_height) {
  std::set<Slope> closure = seed;
  Integer bound = max_height;
  for (const Slope& s : seed) bound = std::max(bound, s.height());
  bool changed = true;
  while (changed) {
    changed = false;
    const std::vector<Slope> current(closure.begin(), closure.end());
    for (const Slope& g1 : current) {
      for (const Slope& g2 : neighbors_within(g1, bound)) {
        if (!closure.contains(g2)) continue;
        Slope product = multiply(g1, g2);
        if (product.height() > max_height || closure.contains(product)) continue;
        if (closure.contains(multiply(g2, g1))) {
          closure.insert(std::move(product));
          changed = true;
        }
      }
    }
  }
  return closure;
}

std::optional<Slope> invariant_slope(const UniModMatrix& m) {
  if (m == UniModMatrix::identity() || m == -UniModMatrix::identity()) return slope(1, 0);
  const Integer t = m.trace();
  const Integer disc = t * t - 4;
  if (disc < 0) return std::nullopt;
  const Integer root = boost::multiprecision::sqrt(disc);
  if (root * root != disc) return std::nullopt;
  std::optional<Slope> best;
  for (const Integer& twice_lambda : {Integer(t + root), Integer(t - root)}) {
    if (twice_lambda % 2 != 0) continue;
    const Integer lambda = twice_lambda / 2;
    Integer vx = m.m12(), vy = lambda - m.m11();
    if (vx == 0 && vy == 0) {
      vx = lambda - m.m22();
      vy = m.m21();
    }
    if (vx == 0 && vy == 0) continue;
    Slope s = canonicalize(vx, vy);
    if (!(apply(m, s) == s)) continue;
    if (!best || s < *best) best = s;
  }
  return best;
}

TorusModulus torus_modulus(double l_a, double l_b, double theta) {
  if (!(l_a > 0) || !(l_b > 0) || !std::isfinite(l_a) || !std::isfinite(l_b)) {
    throw Error(ErrorKind::DomainError, "loop lengths must be positive and finite");
  }
  if (!(theta > 0) || !(theta < std::numbers::pi)) {
    throw Error(ErrorKind::DomainError, "angle must lie in (0, pi)");
  }
  return {std::polar(l_a / l_b, theta)};
}

TorusModulus change_marking(const UniModMatrix& m, const TorusModulus& z) {
  const Complex num = to_double(m.m11()) * z.z + to_double(m.m12());
  const Complex den = to_double(m.m21()) * z.z + to_double(m.m22());
  return {num / den};
}

}  // namespace recon
