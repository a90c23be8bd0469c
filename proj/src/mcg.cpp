#include "recon/mcg.hpp"

#include <algorithm>
#include <cctype>

#include "recon/error.hpp"

namespace recon {

namespace {

void require_neighbors(const Slope& a, const Slope& b) {
  if (!are_neighbors(a, b)) {
    throw Error(ErrorKind::NotNeighbors, a.str() + " and " + b.str() + " have det " + det(a, b).str());
  }
}

Integer column_norm(const UniModMatrix& m) {
  return std::max(Integer(abs(m.m11()) + abs(m.m21())), Integer(abs(m.m12()) + abs(m.m22())));
}

char inverse_letter(char c) { return std::isupper(static_cast<unsigned char>(c)) ? char(std::tolower(c)) : char(std::toupper(c)); }

// Integer nearest to num / den, rounding halves toward zero.
Integer nearest_quotient(const Integer& num, const Integer& den) {
  Integer q = num / den;  // truncates
  const Integer r = num - q * den;
  if (2 * abs(r) > abs(den)) q += (sign(r) == sign(den)) ? 1 : -1;
  return q;
}

}  // namespace

UniModMatrix evaluate(const TwistWord& w) {
  UniModMatrix out;
  for (const TwistLetter& letter : w) out = out * twist_matrix(letter.slope).pow(letter.exponent);
  return out;
}

bool check_relation_II(const Slope& a, const Slope& b) {
  require_neighbors(a, b);
  const UniModMatrix ta = twist_matrix(a);
  return twist_matrix(multiply(a, b)) == ta * twist_matrix(b) * ta.inverse();
}

bool check_relation_III(const Slope& a, const Slope& b) {
  require_neighbors(a, b);
  const UniModMatrix p = twist_matrix(a) * twist_matrix(b) * twist_matrix(multiply(a, b));
  return p * p == -UniModMatrix::identity();
}

bool acts_trivially_on_slopes(const UniModMatrix& m, int test_height) {
  for (const Slope& s : enumerate_slopes(test_height)) {
    if (!(apply(m, s) == s)) return false;
  }
  return true;
}

bool check_relation_IV_action(SurfaceTag surface, const Slope& a, const Slope& b, int test_height) {
  require_neighbors(a, b);
  const int power = surface == SurfaceTag::S04 ? 2 : 1;
  const UniModMatrix p = twist_matrix(a).pow(power) * twist_matrix(b).pow(power) *
                         twist_matrix(multiply(a, b)).pow(power);
  return acts_trivially_on_slopes(p, test_height);
}

UniModMatrix letter_matrix(char letter) {
  switch (letter) {
    case 'L': return {1, 2, 0, 1};
    case 'l': return {1, -2, 0, 1};
    case 'R': return {1, 0, -2, 1};
    case 'r': return {1, 0, 2, 1};
    default: throw Error(ErrorKind::ParseError, std::string("bad congruence letter '") + letter + "'");
  }
}

UniModMatrix evaluate(const CongruenceWord& w) {
  UniModMatrix out;
  for (char c : w.letters) out = out * letter_matrix(c);
  return w.sign < 0 ? -out : out;
}

std::string free_reduce(std::string_view letters) {
  std::string out;
  for (char c : letters) {
    if (!out.empty() && out.back() == inverse_letter(c)) {
      out.pop_back();
    } else {
      out.push_back(c);
    }
  }
  return out;
}

CongruenceWord congruence_decompose(const UniModMatrix& m) {
  auto odd = [](const Integer& x) { return (abs(x) % 2) == 1; };
  if (!odd(m.m11()) || odd(m.m12()) || odd(m.m21()) || !odd(m.m22())) {
    throw Error(ErrorKind::NotCongruent, m.str() + " is not congruent to the identity mod 2");
  }
  const UniModMatrix id = UniModMatrix::identity();
  std::string word;
  UniModMatrix cur = m;
  // Ping-pong: peel one letter off the left while the column norm drops.
  while (!(cur == id) && !(cur == -id)) {
    const Integer n = column_norm(cur);
    bool stepped = false;
    for (char c : {'L', 'l', 'R', 'r'}) {
      UniModMatrix next = letter_matrix(inverse_letter(c)) * cur;
      if (column_norm(next) < n) {
        word.push_back(c);
        cur = std::move(next);
        stepped = true;
        break;
      }
    }
    if (!stepped) break;
  }
  // Fallback: Euclid on the first column; |m11| odd and |m21| even never tie.
  while (cur.m21() != 0) {
    if (abs(cur.m11()) > abs(cur.m21())) {
      const Integer k = nearest_quotient(cur.m11(), Integer(2 * cur.m21()));
      // L^{-k}·M: m11 -> m11 − 2k·m21
      const char c = k > 0 ? 'L' : 'l';
      for (Integer i = 0; i < abs(k); ++i) word.push_back(c);
      cur = letter_matrix('L').pow(-k.convert_to<long long>()) * cur;
    } else {
      const Integer k = nearest_quotient(Integer(-cur.m21()), Integer(2 * cur.m11()));
      // R^{-k}·M: m21 -> m21 + 2k·m11
      const char c = k > 0 ? 'R' : 'r';
      for (Integer i = 0; i < abs(k); ++i) word.push_back(c);
      cur = letter_matrix('R').pow(-k.convert_to<long long>()) * cur;
    }
  }
  // Now cur = ±[[1, 2k], [0, 1]].
  const int s = cur.m11() > 0 ? 1 : -1;
  const Integer k = (s > 0 ? cur.m12() : Integer(-cur.m12())) / 2;
  for (Integer i = 0; i < abs(k); ++i) word.push_back(k > 0 ? 'L' : 'l');
  return {free_reduce(word), s};
}

}  // namespace recon
