#pragma once

#include <array>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>

#include "recon/farey.hpp"
#include "recon/numeric.hpp"

namespace recon {

/// The two level-1 surfaces: one-holed torus and four-holed sphere.
enum class SurfaceTag { T11, S04 };

std::string_view to_string(SurfaceTag tag);
SurfaceTag parse_surface(std::string_view text);

/// Geometric intersection number of the loops with slopes a and b.
Integer intersection(SurfaceTag surface, const Slope& a, const Slope& b);

/// Resolution product ab of Farey neighbours: the positively oriented
/// completion of (a, b). Throws NotModularRelated unless det(a, b) = 1.
Slope multiply(const Slope& a, const Slope& b);

/// Right-handed Dehn twist about `a`: x ↦ x + ω(a, x)·a with
/// ω((p, q), (x1, x2)) = p·x2 − q·x1.
UniModMatrix twist_matrix(const Slope& a);

/// How a four-holed-sphere loop splits the boundary labels b1..b4 into pairs.
/// Parity (1,0) ↦ {b1 b2 | b3 b4}, (0,1) ↦ {b1 b3 | b2 b4}, (1,1) ↦ {b1 b4 | b2 b3}.
struct BoundaryPairing {
  int parity_p = 1;
  int parity_q = 0;
  std::array<std::array<int, 2>, 2> pairs{{{1, 2}, {3, 4}}};

  /// The label sharing a pair with `label` (labels are 1-based).
  int partner(int label) const;
  std::string str() const;
  friend bool operator==(const BoundaryPairing&, const BoundaryPairing&) = default;
};

BoundaryPairing boundary_pairing(const Slope& s);

/// Writes b = multiply(γ1, γ2) with every one of det(a, γ1), det(a, γ2),
/// det(a, multiply(γ2, γ1)) strictly below det(a, b). Throws NotSplittable
/// when det(a, b) <= 1.
std::pair<Slope, Slope> lickorish_split(const Slope& a, const Slope& b);

/// Fixed point of "adjoin γ1γ2 whenever γ1, γ2 and γ2γ1 are present", kept
/// to slopes of height <= max_height.
std::set<Slope> generate_closure(const std::set<Slope>& seed, int max_height);

/// A slope fixed by m when one exists (1/0 for ±identity).
std::optional<Slope> invariant_slope(const UniModMatrix& m);

/// Shape of a marked flat torus, a point of the upper half-plane.
struct TorusModulus {
  Complex z;
};

/// z = (l_a / l_b)·e^{iθ}. Throws DomainError outside l_a, l_b > 0, θ ∈ (0, π).
TorusModulus torus_modulus(double l_a, double l_b, double theta);

/// Möbius action of the marking change on the modulus.
TorusModulus change_marking(const UniModMatrix& m, const TorusModulus& z);

}  // namespace recon
