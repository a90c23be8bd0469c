#pragma once

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "recon/farey.hpp"
#include "recon/loopcalc.hpp"
#include "recon/numeric.hpp"
#include "recon/report.hpp"

namespace recon {

enum class TraceMode { SL2C, Hyperbolic };

std::string_view to_string(TraceMode mode);  // "sl2c" / "hyperbolic"
TraceMode parse_mode(std::string_view text);

template <class S>
struct Matrix2 {
  S a{1}, b{0}, c{0}, d{1};

  S det() const { return a * d - b * c; }
  S trace() const { return a + d; }
  // Adjugate; equals the inverse when det = 1.
  Matrix2 inverse() const { return {d, -b, -c, a}; }

  friend Matrix2 operator*(const Matrix2& x, const Matrix2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
};

using Matrix2C = Matrix2<Complex>;
using Matrix2Q = Matrix2<ExactComplex>;

Matrix2C to_complex(const Matrix2Q& m);

/// Partial function on slopes plus boundary values. Boundary labels are "b"
/// for T11 and "b1".."b4" for S04 (b4 is the composite x1x2x3).
template <class S>
struct BasicTraceFunction {
  SurfaceTag surface = SurfaceTag::T11;
  TraceMode mode = TraceMode::SL2C;
  std::map<std::string, S> boundary;
  std::map<Slope, S> values;
};

using TraceFunction = BasicTraceFunction<Complex>;
using ExactTraceFunction = BasicTraceFunction<ExactComplex>;

std::vector<std::string> boundary_labels(SurfaceTag surface);

TraceFunction to_complex(const ExactTraceFunction& tf);

/// Throws NonUnimodular unless det = 1 (exactly, or to 1e-9 relative).
template <class S>
void require_unimodular(const Matrix2<S>& m, std::string_view name);

/// Values at every slope of height <= max_height (the base triangle is always
/// included) from the flip recursion t(γ') = t(a)t(b) − t(γ).
template <class S>
BasicTraceFunction<S> generate_t11(const Matrix2<S>& A, const Matrix2<S>& B, int max_height);

/// Boundary (tr A1, tr A2, tr A3, tr A1A2A3); base values tr A1A2 at 1/0,
/// tr A3A1 at 0/1, tr A2A3 at 1/1; flip rule t(γ) + t(γ') = c_γ − t(a)t(b).
template <class S>
BasicTraceFunction<S> generate_s04(const Matrix2<S>& A1, const Matrix2<S>& A2, const Matrix2<S>& A3,
                                   int max_height);

/// c_α for an S04 slope: sum over the two boundary pairs of α of the product
/// of their traces.
template <class S>
S pair_coefficient(const std::map<std::string, S>& boundary, const Slope& alpha);

/// Checks the triangle and flip relations on every triangle and quadrilateral
/// of the domain, plus the range constraints in hyperbolic mode. Floating
/// inputs use relative tolerance `tol`; exact inputs must match exactly.
/// Throws IncompleteDomain if a boundary label is missing or a slope belongs
/// to no triangle of the domain.
template <class S>
VerificationReport verify(const BasicTraceFunction<S>& tf, double tol = 1e-9);

/// Re-expresses tf in the other mode. T11: the boundary value changes sign.
/// S04: every value changes sign (both relations are invariant under that).
template <class S>
BasicTraceFunction<S> convert_mode(const BasicTraceFunction<S>& tf, TraceMode target);

/// a123² − a123(a1a23 + a2a31 + a3a12 − a1a2a3) + Σa_i² + Σa_ij²
/// − a1a2a12 − a2a3a23 − a3a1a31 + a12a23a31 − 4.
template <class S>
S fricke_vogt_residual(const S& a1, const S& a2, const S& a3, const S& a12, const S& a23, const S& a31,
                       const S& a123);

/// Septuple (a1, a2, a3, a12, a23, a31, a123) with the four boundary traces
/// (a1, a2, a3, a123) permuted by `perm` (perm[i] = new position of entry i)
/// and the pair traces moved along with the induced action on the three
/// pairings {12|3 123}, {23|1 123}, {13|2 123}.
std::array<Complex, 7> permute_septuple(const std::array<Complex, 7>& s, const std::array<int, 4>& perm);

/// Words over A, B, a = A⁻¹, b = B⁻¹.
Matrix2C word_matrix(const Matrix2C& A, const Matrix2C& B, std::string_view word);
std::vector<std::string> reduced_words(int max_length);
std::string inverse_word(std::string_view word);

/// |f(xy) + f(xy⁻¹) − f(x)f(y)| relative to the size of the terms.
double helling_residual(const Matrix2C& X, const Matrix2C& Y);

/// Exhaustive over all ordered pairs of reduced words of length <= max_word_length.
VerificationReport helling_check(const Matrix2C& A, const Matrix2C& B, int max_word_length, double tol = 1e-9);

}  // namespace recon
