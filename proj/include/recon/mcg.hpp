#pragma once

#include <string>
#include <utility>
#include <vector>

#include "recon/farey.hpp"
#include "recon/loopcalc.hpp"

namespace recon {

struct TwistLetter {
  Slope slope;
  long long exponent = 1;
};

using TwistWord = std::vector<TwistLetter>;

/// Ordered product of twist_matrix(slope)^exponent.
UniModMatrix evaluate(const TwistWord& w);

/// twist_matrix(ab) == T_a T_b T_a⁻¹. Throws NotNeighbors unless det(a, b) = 1.
bool check_relation_II(const Slope& a, const Slope& b);

/// P = T_a T_b T_ab satisfies P² = −I exactly.
bool check_relation_III(const Slope& a, const Slope& b);

/// In the S04 model twists act through their squares; P = T_a² T_b² T_ab²
/// must fix every slope of height <= test_height. In the T11 model the same
/// word uses plain twists and the check is expected to fail.
bool check_relation_IV_action(SurfaceTag surface, const Slope& a, const Slope& b, int test_height = 20);

bool acts_trivially_on_slopes(const UniModMatrix& m, int test_height);

/// Word over L = [[1,2],[0,1]], R = [[1,0],[-2,1]] and their inverses l, r.
struct CongruenceWord {
  std::string letters;  // over {L, l, R, r}, freely reduced
  int sign = 1;

  friend bool operator==(const CongruenceWord&, const CongruenceWord&) = default;
};

UniModMatrix letter_matrix(char letter);
UniModMatrix evaluate(const CongruenceWord& w);
std::string free_reduce(std::string_view letters);

/// Throws NotCongruent unless M ≡ I mod 2. Each greedy step strictly lowers
/// max(|m11| + |m21|, |m12| + |m22|); L-steps win ties.
CongruenceWord congruence_decompose(const UniModMatrix& m);

}  // namespace recon
