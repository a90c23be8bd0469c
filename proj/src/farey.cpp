#include "recon/farey.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "recon/error.hpp"

namespace recon {

namespace {

// Returns g = gcd(a, b) >= 0 together with x, y such that a·x + b·y = g.
Integer extended_gcd(const Integer& a, const Integer& b, Integer& x, Integer& y) {
  Integer old_r = a, r = b;
  Integer old_s = 1, s = 0;
  Integer old_t = 0, t = 1;
  while (r != 0) {
    Integer quotient = old_r / r;
    Integer tmp = old_r - quotient * r;
    old_r = r;
    r = tmp;
    tmp = old_s - quotient * s;
    old_s = s;
    s = tmp;
    tmp = old_t - quotient * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  x = old_s;
  y = old_t;
  return old_r;
}

// True when `s` lies in the arc cut off by edge {x, y} on the side away from
// the third vertex `z`. Writing s = m·x + n·y in the basis (x, y), the two
// arcs between x and y are distinguished by the sign of m·n.
bool beyond_edge(const Slope& s, const Slope& x, const Slope& y, const Slope& z) {
  const Integer d = signed_det(x, y);
  const int m = sign(Integer(signed_det(s, y) * d));
  const int n = sign(Integer(signed_det(x, s) * d));
  const int mz = sign(Integer(signed_det(z, y) * d));
  const int nz = sign(Integer(signed_det(x, z) * d));
  return m * n != mz * nz;
}

Slope other_completion(const Slope& x, const Slope& y, const Slope& known) {
  auto [g1, g2] = completions(x, y);
  return g1 == known ? g2 : g1;
}

}  // namespace

Integer Slope::height() const { return abs(p_) + abs(q_); }

std::string Slope::str() const { return p_.str() + "/" + q_.str(); }

Slope Slope::parse(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    throw Error(ErrorKind::ParseError, "slope must be written p/q, got '" + std::string(text) + "'");
  }
  Integer p = parse_integer(text.substr(0, slash));
  Integer q = parse_integer(text.substr(slash + 1));
  if (p == 0 && q == 0) throw Error(ErrorKind::ParseError, "slope 0/0");
  if (gcd(p, q) != 1) {
    throw Error(ErrorKind::ParseError, "slope '" + std::string(text) + "' is not primitive");
  }
  return canonicalize(std::move(p), std::move(q));
}

std::strong_ordering operator<=>(const Slope& a, const Slope& b) {
  const Integer ha = a.height();
  const Integer hb = b.height();
  if (ha != hb) return ha < hb ? std::strong_ordering::less : std::strong_ordering::greater;
  if (a.p_ != b.p_) return a.p_ < b.p_ ? std::strong_ordering::less : std::strong_ordering::greater;
  if (a.q_ != b.q_) return a.q_ < b.q_ ? std::strong_ordering::less : std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Slope canonicalize(Integer p, Integer q) {
  if (p == 0 && q == 0) throw Error(ErrorKind::ZeroInput, "(0, 0) has no slope");
  const Integer g = gcd(p, q);
  p /= g;
  q /= g;
  if (q < 0 || (q == 0 && p < 0)) {
    p = -p;
    q = -q;
  }
  return Slope(std::move(p), std::move(q));
}

Slope slope(long long p, long long q) { return canonicalize(Integer(p), Integer(q)); }

Integer signed_det(const Slope& a, const Slope& b) { return a.p() * b.q() - b.p() * a.q(); }

Integer det(const Slope& a, const Slope& b) { return abs(signed_det(a, b)); }

bool are_neighbors(const Slope& a, const Slope& b) { return det(a, b) == 1; }

std::pair<Slope, Slope> completions(const Slope& a, const Slope& b) {
  const Integer d = signed_det(a, b);
  if (abs(d) != 1) {
    throw Error(ErrorKind::NotNeighbors, a.str() + " and " + b.str() + " have det " + abs(d).str());
  }
  // d·b is the representative of b with signed_det(a, d·b) = +1.
  return {canonicalize(a.p() + d * b.p(), a.q() + d * b.q()),
          canonicalize(a.p() - d * b.p(), a.q() - d * b.q())};
}

std::vector<Slope> enumerate_slopes(int max_height) {
  std::vector<Slope> out;
  for (long long h = 1; h <= max_height; ++h) {
    for (long long p = -h; p <= h; ++p) {
      const long long q = h - (p < 0 ? -p : p);
      if (q == 0 && p != 1) continue;
      if (std::gcd(p < 0 ? -p : p, q) != 1) continue;
      out.push_back(slope(p, q));
    }
  }
  return out;
}

UniModMatrix::UniModMatrix(Integer m11, Integer m12, Integer m21, Integer m22)
    : m11_(std::move(m11)), m12_(std::move(m12)), m21_(std::move(m21)), m22_(std::move(m22)) {
  if (m11_ * m22_ - m12_ * m21_ != 1) {
    throw Error(ErrorKind::NonUnimodular, "determinant of " + str() + " is not 1");
  }
}

UniModMatrix UniModMatrix::inverse() const { return {Unchecked{}, m22_, -m12_, -m21_, m11_}; }

UniModMatrix UniModMatrix::operator-() const { return {Unchecked{}, -m11_, -m12_, -m21_, -m22_}; }

UniModMatrix UniModMatrix::pow(long long k) const {
  UniModMatrix base = k < 0 ? inverse() : *this;
  unsigned long long e = k < 0 ? static_cast<unsigned long long>(-(k + 1)) + 1 : static_cast<unsigned long long>(k);
  UniModMatrix result;
  while (e != 0) {
    if (e & 1ULL) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

UniModMatrix operator*(const UniModMatrix& a, const UniModMatrix& b) {
  return {UniModMatrix::Unchecked{}, a.m11_ * b.m11_ + a.m12_ * b.m21_, a.m11_ * b.m12_ + a.m12_ * b.m22_,
          a.m21_ * b.m11_ + a.m22_ * b.m21_, a.m21_ * b.m12_ + a.m22_ * b.m22_};
}

std::string UniModMatrix::str() const {
  return "[" + m11_.str() + "," + m12_.str() + "," + m21_.str() + "," + m22_.str() + "]";
}

Slope apply(const UniModMatrix& m, const Slope& s) {
  return canonicalize(m.m11() * s.p() + m.m12() * s.q(), m.m21() * s.p() + m.m22() * s.q());
}

bool positively_oriented(const Slope& a, const Slope& b, const Slope& c) {
  const Integer d = signed_det(a, b);
  if (abs(d) != 1) return false;
  return canonicalize(a.p() + d * b.p(), a.q() + d * b.q()) == c;
}

FareyTriangle FareyTriangle::make(const Slope& a, const Slope& b, const Slope& c) {
  if (!are_neighbors(a, b) || !are_neighbors(b, c) || !are_neighbors(a, c)) {
    throw Error(ErrorKind::NotNeighbors,
                "(" + a.str() + ", " + b.str() + ", " + c.str() + ") is not a Farey triangle");
  }
  if (positively_oriented(a, b, c)) return {a, b, c};
  return {a, c, b};
}

FareyTriangle FareyTriangle::base() { return {slope(1, 0), slope(0, 1), slope(1, 1)}; }

std::vector<FareyTriangle> farey_path(const Slope& s) {
  FareyTriangle tri = FareyTriangle::base();
  std::vector<FareyTriangle> path{tri};
  while (!tri.contains(s)) {
    const Slope v[3] = {tri.a, tri.b, tri.c};
    bool moved = false;
    for (int i = 0; i < 3 && !moved; ++i) {
      const Slope& x = v[(i + 1) % 3];
      const Slope& y = v[(i + 2) % 3];
      const Slope& z = v[i];
      if (beyond_edge(s, x, y, z)) {
        tri = FareyTriangle::make(x, y, other_completion(x, y, z));
        moved = true;
      }
    }
    path.push_back(tri);
  }
  return path;
}

std::vector<FareyFlip> flip_tree(int max_height) {
  struct Edge {
    Slope u, v, opposite;
  };
  std::vector<FareyFlip> flips;
  const FareyTriangle base = FareyTriangle::base();
  std::deque<Edge> queue{{base.a, base.b, base.c}, {base.b, base.c, base.a}, {base.c, base.a, base.b}};
  for (const Slope& s : {base.a, base.b, base.c}) {
    if (s.height() > max_height) return flips;
  }
  while (!queue.empty()) {
    Edge e = std::move(queue.front());
    queue.pop_front();
    Slope fresh = other_completion(e.u, e.v, e.opposite);
    if (fresh.height() > max_height) continue;
    flips.push_back({e.u, e.v, e.opposite, fresh});
    queue.push_back({e.u, fresh, e.v});
    queue.push_back({e.v, fresh, e.u});
  }
  return flips;
}

std::vector<Slope> neighbors_within(const Slope& a, const Integer& max_height) {
  Integer x, y;
  extended_gcd(a.p(), a.q(), x, y);
  // p·x + q·y = 1, so b0 = (−y, x) satisfies signed_det(a, b0) = 1.
  const Integer r = -y;
  const Integer s = x;
  const Integer h0 = abs(r) + abs(s);
  const Integer k_max = (max_height + h0) / a.height() + 1;
  std::vector<Slope> out;
  for (Integer k = -k_max; k <= k_max; ++k) {
    Slope b = canonicalize(r + k * a.p(), s + k * a.q());
    if (b.height() <= max_height) out.push_back(std::move(b));
  }
  std::sort(out.begin(), out.end());
  return out;
}

SlopeComplex complex_within(const std::set<Slope>& domain) {
  SlopeComplex cx;
  if (domain.empty()) return cx;
  Integer max_height = 0;
  for (const Slope& s : domain) max_height = std::max(max_height, s.height());
  std::set<Slope> covered;
  for (const Slope& a : domain) {
    for (const Slope& b : neighbors_within(a, max_height)) {
      if (!(a < b) || !domain.contains(b)) continue;
      auto [g1, g2] = completions(a, b);
      const bool has1 = domain.contains(g1);
      const bool has2 = domain.contains(g2);
      for (const Slope* g : {&g1, &g2}) {
        if (domain.contains(*g)) covered.insert({a, b, *g});
        if (domain.contains(*g) && b < *g) cx.triangles.push_back(FareyTriangle::make(a, b, *g));
      }
      if (has1 && has2) cx.quads.push_back({a, b, g1, g2});
    }
  }
  for (const Slope& s : domain) {
    if (!covered.contains(s)) cx.isolated.push_back(s);
  }
  return cx;
}

}  // namespace recon
