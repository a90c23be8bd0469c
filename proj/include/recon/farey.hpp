#pragma once

#include <compare>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "recon/numeric.hpp"

namespace recon {

/// A primitive unoriented direction ±(p, q), i.e. a point of Q ∪ {∞}.
///
/// Always stored canonically: gcd(|p|, |q|) = 1 and either q > 0 or
/// (p, q) = (1, 0). Ordering is by height |p| + |q|, then p, then q, which is
/// also the enumeration order.
class Slope {
 public:
  Slope() : p_(1), q_(0) {}

  const Integer& p() const { return p_; }
  const Integer& q() const { return q_; }
  Integer height() const;
  bool is_infinity() const { return q_ == 0; }

  std::string str() const;
  static Slope parse(std::string_view text);

  friend bool operator==(const Slope& a, const Slope& b) { return a.p_ == b.p_ && a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Slope& a, const Slope& b);

 private:
  friend Slope canonicalize(Integer p, Integer q);
  Slope(Integer p, Integer q) : p_(std::move(p)), q_(std::move(q)) {}

  Integer p_;
  Integer q_;
};

/// Canonical representative of ±(p, q)/gcd. Throws ZeroInput on (0, 0).
Slope canonicalize(Integer p, Integer q);
Slope slope(long long p, long long q);

/// p·q' − p'·q on the canonical representatives.
Integer signed_det(const Slope& a, const Slope& b);
/// |p·q' − p'·q|; the torus intersection pairing.
Integer det(const Slope& a, const Slope& b);
bool are_neighbors(const Slope& a, const Slope& b);

/// The two slopes completing {a, b} to a Farey triangle: with signs chosen so
/// signed_det(a, b) = +1, these are a + b (first) and a − b (second).
std::pair<Slope, Slope> completions(const Slope& a, const Slope& b);

/// All canonical slopes with |p| + |q| <= max_height, in canonical order.
std::vector<Slope> enumerate_slopes(int max_height);

/// 2x2 integer matrix of determinant one.
class UniModMatrix {
 public:
  UniModMatrix() : m11_(1), m12_(0), m21_(0), m22_(1) {}
  /// Throws NonUnimodular unless m11·m22 − m12·m21 = 1.
  UniModMatrix(Integer m11, Integer m12, Integer m21, Integer m22);

  static UniModMatrix identity() { return {}; }

  const Integer& m11() const { return m11_; }
  const Integer& m12() const { return m12_; }
  const Integer& m21() const { return m21_; }
  const Integer& m22() const { return m22_; }
  Integer trace() const { return m11_ + m22_; }

  UniModMatrix inverse() const;
  UniModMatrix operator-() const;
  UniModMatrix pow(long long k) const;
  friend UniModMatrix operator*(const UniModMatrix& a, const UniModMatrix& b);
  friend bool operator==(const UniModMatrix& a, const UniModMatrix& b) = default;

  /// Row-major "[m11,m12,m21,m22]".
  std::string str() const;

 private:
  struct Unchecked {};
  UniModMatrix(Unchecked, Integer m11, Integer m12, Integer m21, Integer m22)
      : m11_(std::move(m11)), m12_(std::move(m12)), m21_(std::move(m21)), m22_(std::move(m22)) {}

  Integer m11_, m12_, m21_, m22_;
};

/// Fractional linear action on slopes.
Slope apply(const UniModMatrix& m, const Slope& s);

/// Three pairwise-neighbour slopes in positive orientation: with signed
/// representatives satisfying signed_det(a, b) = +1, c = ±(a + b).
struct FareyTriangle {
  Slope a, b, c;

  /// Orders the three slopes positively, keeping `a` first. Throws
  /// NotNeighbors unless all three pairs are Farey neighbours.
  static FareyTriangle make(const Slope& a, const Slope& b, const Slope& c);
  static FareyTriangle base();  // (1/0, 0/1, 1/1)

  bool contains(const Slope& s) const { return a == s || b == s || c == s; }
  friend bool operator==(const FareyTriangle&, const FareyTriangle&) = default;
};

bool positively_oriented(const Slope& a, const Slope& b, const Slope& c);

/// Triangles from the base triangle to the first triangle containing `s`;
/// consecutive entries differ by one diagonal flip.
std::vector<FareyTriangle> farey_path(const Slope& s);

/// One step of the flip recursion: across edge {left, right}, `old_vertex`
/// is replaced by `new_vertex`.
struct FareyFlip {
  Slope left, right, old_vertex, new_vertex;
};

/// Breadth-first flips from the base triangle reaching every slope of height
/// <= max_height exactly once as a new vertex.
std::vector<FareyFlip> flip_tree(int max_height);

/// All b with det(a, b) = 1 and height(b) <= max_height, in canonical order.
std::vector<Slope> neighbors_within(const Slope& a, const Integer& max_height);

/// An edge {a, b} together with both of its completions (a quadrilateral).
struct FareyQuad {
  Slope a, b, gamma, gamma_prime;
};

/// The triangles and quadrilaterals whose vertices all lie in `domain`, plus
/// domain slopes that belong to no triangle at all.
struct SlopeComplex {
  std::vector<FareyTriangle> triangles;
  std::vector<FareyQuad> quads;
  std::vector<Slope> isolated;
};

SlopeComplex complex_within(const std::set<Slope>& domain);

}  // namespace recon
