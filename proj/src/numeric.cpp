#include "recon/numeric.hpp"

#include <cmath>

#include "recon/error.hpp"

namespace recon {

Integer abs(const Integer& x) { return x < 0 ? Integer(-x) : x; }

Integer gcd(const Integer& a, const Integer& b) {
  return boost::multiprecision::gcd(abs(a), abs(b));
}

int sign(const Integer& x) { return x.sign(); }

Integer parse_integer(std::string_view text) {
  std::string s(text);
  std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (start == s.size()) throw Error(ErrorKind::ParseError, "empty integer '" + s + "'");
  for (std::size_t i = start; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw Error(ErrorKind::ParseError, "bad integer '" + s + "'");
  }
  if (s[0] == '+') s.erase(0, 1);
  return Integer(s);
}

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  Integer num = parse_integer(text.substr(0, slash));
  Integer den = parse_integer(text.substr(slash + 1));
  if (den == 0) throw Error(ErrorKind::ParseError, "zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

std::string to_string(const Rational& r) {
  const Integer num = boost::multiprecision::numerator(r);
  const Integer den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }
double to_double(const Integer& x) { return x.convert_to<double>(); }

Complex to_complex(const ExactComplex& z) { return {to_double(z.re), to_double(z.im)}; }

double magnitude(const ExactComplex& z) { return std::abs(to_complex(z)); }

double magnitude(const Rational& x) { return std::fabs(to_double(x)); }

}  // namespace recon
