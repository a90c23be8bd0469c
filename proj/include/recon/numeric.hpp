#pragma once

#include <complex>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace recon {

// Slope coordinates grow exponentially along deep Farey paths, so all exact
// integer work is arbitrary precision.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using Complex = std::complex<double>;

Integer abs(const Integer& x);
Integer gcd(const Integer& a, const Integer& b);
int sign(const Integer& x);

// Parses "p", "-p" or "p/q". Throws Error(ParseError).
Rational parse_rational(std::string_view text);
Integer parse_integer(std::string_view text);

// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& r);
double to_double(const Rational& r);
double to_double(const Integer& x);

/// Complex number with exact rational parts. Used for the exact trace pipeline
/// when the generating matrices have rational entries.
struct ExactComplex {
  Rational re{0};
  Rational im{0};

  ExactComplex() = default;
  ExactComplex(Rational r) : re(std::move(r)) {}  // NOLINT(implicit)
  ExactComplex(int r) : re(r) {}                  // NOLINT(implicit)
  ExactComplex(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  friend ExactComplex operator+(const ExactComplex& a, const ExactComplex& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend ExactComplex operator-(const ExactComplex& a, const ExactComplex& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend ExactComplex operator-(const ExactComplex& a) { return {-a.re, -a.im}; }
  friend ExactComplex operator*(const ExactComplex& a, const ExactComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  ExactComplex& operator+=(const ExactComplex& b) { return *this = *this + b; }
  ExactComplex& operator-=(const ExactComplex& b) { return *this = *this - b; }
  ExactComplex& operator*=(const ExactComplex& b) { return *this = *this * b; }
  friend bool operator==(const ExactComplex& a, const ExactComplex& b) {
    return a.re == b.re && a.im == b.im;
  }
};

Complex to_complex(const ExactComplex& z);
inline Complex to_complex(const Complex& z) { return z; }

// Scalar helpers shared by the floating and exact pipelines.
inline double magnitude(const Complex& z) { return std::abs(z); }
double magnitude(const ExactComplex& z);
inline double magnitude(double x) { return x < 0 ? -x : x; }
double magnitude(const Rational& x);

template <class S>
inline constexpr bool is_exact_v = false;
template <>
inline constexpr bool is_exact_v<ExactComplex> = true;
template <>
inline constexpr bool is_exact_v<Rational> = true;

// Relative size of a residual against the magnitude of the terms that produced
// it; exact zero stays exact zero.
inline double relative(double residual_magnitude, double scale) {
  return residual_magnitude / (scale > 1.0 ? scale : 1.0);
}

}  // namespace recon
