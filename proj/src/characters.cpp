#include "recon/characters.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <set>

#include "recon/error.hpp"

namespace recon {

namespace {

template <class S>
S sq(const S& x) {
  return x * x;
}

template <class S>
std::string value_str(const S& v) {
  if constexpr (is_exact_v<S>) {
    if (v.im == 0) return to_string(v.re);
    return to_string(v.re) + (v.im < 0 ? "" : "+") + to_string(v.im) + "i";
  } else {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g%+.6gi", v.real(), v.imag());
    return buf;
  }
}

std::string triangle_str(const Slope& a, const Slope& b, const Slope& c) {
  return "(" + a.str() + ", " + b.str() + ", " + c.str() + ")";
}

std::string flip_str(const FareyQuad& q) {
  return "{" + q.a.str() + ", " + q.b.str() + "}: " + q.gamma.str() + " <-> " + q.gamma_prime.str();
}

// Compares one relation lhs = rhs, given the magnitudes of the terms that
// went into it. Exact scalars must agree exactly.
template <class S>
void check(VerificationReport& report, const S& lhs, const S& rhs, double scale, double tol,
           std::string relation, std::string location, std::vector<Slope> key) {
  const double res = relative(magnitude(lhs - rhs), scale);
  bool bad;
  if constexpr (is_exact_v<S>) {
    bad = !(lhs == rhs);
  } else {
    bad = !(res <= tol);
  }
  if (bad) {
    report.fail({std::move(location), std::move(relation), res, std::move(key)});
  } else {
    report.observe(res);
  }
}

template <class S>
double max_mag(std::initializer_list<S> xs) {
  double m = 0;
  for (const S& x : xs) m = std::max(m, magnitude(x));
  return m;
}

template <class S>
const S& boundary_value(const std::map<std::string, S>& boundary, const std::string& label) {
  auto it = boundary.find(label);
  if (it == boundary.end()) throw Error(ErrorKind::IncompleteDomain, "missing boundary value '" + label + "'");
  return it->second;
}

template <class S>
void range_check(VerificationReport& report, const S& v, bool strict, double tol, const std::string& where,
                 std::vector<Slope> key) {
  // Interior values must be real and > 2; boundary values real and >= 2.
  double re, im;
  if constexpr (is_exact_v<S>) {
    const bool real = v.im == 0;
    const bool above = strict ? v.re > 2 : v.re >= 2;
    if (real && above) return;
    re = to_double(v.re);
    im = to_double(v.im);
  } else {
    re = v.real();
    im = v.imag();
    const bool real = std::fabs(im) <= tol * std::max(1.0, std::abs(v));
    const bool above = strict ? re > 2 : re >= 2 - 2 * tol;
    if (real && above) return;
  }
  const double res = std::max(std::fabs(im), std::max(0.0, 2 - re));
  report.fail({where + " = " + value_str(v) + (strict ? " must be real and > 2" : " must be real and >= 2"),
               "range", res, std::move(key)});
}

template <class S>
S total_square(const std::map<std::string, S>& boundary) {
  S out{0};
  for (const auto& [label, v] : boundary) out += v * v;
  return out;
}

template <class S>
S total_product(const std::map<std::string, S>& boundary) {
  S out{1};
  for (const auto& [label, v] : boundary) out *= v;
  return out;
}

template <class S>
double boundary_scale(const std::map<std::string, S>& boundary) {
  double m = 0;
  for (const auto& [label, v] : boundary) m = std::max(m, magnitude(v));
  return m;
}

}  // namespace

std::string_view to_string(TraceMode mode) { return mode == TraceMode::SL2C ? "sl2c" : "hyperbolic"; }

TraceMode parse_mode(std::string_view text) {
  if (text == "sl2c" || text == "SL2C") return TraceMode::SL2C;
  if (text == "hyperbolic" || text == "HYPERBOLIC") return TraceMode::Hyperbolic;
  throw Error(ErrorKind::ParseError, "unknown mode '" + std::string(text) + "' (expected sl2c or hyperbolic)");
}

Matrix2C to_complex(const Matrix2Q& m) {
  return {to_complex(m.a), to_complex(m.b), to_complex(m.c), to_complex(m.d)};
}

std::vector<std::string> boundary_labels(SurfaceTag surface) {
  if (surface == SurfaceTag::T11) return {"b"};
  return {"b1", "b2", "b3", "b4"};
}

TraceFunction to_complex(const ExactTraceFunction& tf) {
  TraceFunction out{tf.surface, tf.mode, {}, {}};
  for (const auto& [k, v] : tf.boundary) out.boundary[k] = to_complex(v);
  for (const auto& [k, v] : tf.values) out.values[k] = to_complex(v);
  return out;
}

template <class S>
void require_unimodular(const Matrix2<S>& m, std::string_view name) {
  const S d = m.det();
  bool ok;
  if constexpr (is_exact_v<S>) {
    ok = d == S{1};
  } else {
    const double scale = std::abs(m.a) * std::abs(m.d) + std::abs(m.b) * std::abs(m.c);
    ok = std::abs(d - 1.0) <= 1e-9 * std::max(1.0, scale);
  }
  if (!ok) throw Error(ErrorKind::NonUnimodular, std::string(name) + " has determinant " + value_str(d));
}

template <class S>
BasicTraceFunction<S> generate_t11(const Matrix2<S>& A, const Matrix2<S>& B, int max_height) {
  require_unimodular(A, "A");
  require_unimodular(B, "B");
  BasicTraceFunction<S> tf;
  tf.surface = SurfaceTag::T11;
  tf.mode = TraceMode::SL2C;
  tf.boundary["b"] = (A * B * A.inverse() * B.inverse()).trace();
  tf.values[slope(1, 0)] = A.trace();
  tf.values[slope(0, 1)] = B.trace();
  tf.values[slope(1, 1)] = (A * B).trace();
  for (const FareyFlip& f : flip_tree(max_height)) {
    tf.values[f.new_vertex] = tf.values.at(f.left) * tf.values.at(f.right) - tf.values.at(f.old_vertex);
  }
  return tf;
}

template <class S>
S pair_coefficient(const std::map<std::string, S>& boundary, const Slope& alpha) {
  const BoundaryPairing bp = boundary_pairing(alpha);
  S out{0};
  for (const auto& pair : bp.pairs) {
    out += boundary_value(boundary, "b" + std::to_string(pair[0])) *
           boundary_value(boundary, "b" + std::to_string(pair[1]));
  }
  return out;
}

template <class S>
BasicTraceFunction<S> generate_s04(const Matrix2<S>& A1, const Matrix2<S>& A2, const Matrix2<S>& A3,
                                   int max_height) {
  require_unimodular(A1, "A1");
  require_unimodular(A2, "A2");
  require_unimodular(A3, "A3");
  BasicTraceFunction<S> tf;
  tf.surface = SurfaceTag::S04;
  tf.mode = TraceMode::SL2C;
  tf.boundary["b1"] = A1.trace();
  tf.boundary["b2"] = A2.trace();
  tf.boundary["b3"] = A3.trace();
  tf.boundary["b4"] = (A1 * A2 * A3).trace();
  tf.values[slope(1, 0)] = (A1 * A2).trace();
  tf.values[slope(0, 1)] = (A3 * A1).trace();
  tf.values[slope(1, 1)] = (A2 * A3).trace();
  for (const FareyFlip& f : flip_tree(max_height)) {
    const S& x = tf.values.at(f.left);
    const S& y = tf.values.at(f.right);
    tf.values[f.new_vertex] = pair_coefficient(tf.boundary, f.new_vertex) - x * y - tf.values.at(f.old_vertex);
  }
  return tf;
}

template <class S>
VerificationReport verify(const BasicTraceFunction<S>& tf, double tol) {
  std::set<Slope> domain;
  for (const auto& [s, v] : tf.values) domain.insert(s);
  const SlopeComplex cx = complex_within(domain);
  if (!cx.isolated.empty()) {
    throw Error(ErrorKind::IncompleteDomain, "slope " + cx.isolated.front().str() + " lies in no triangle of the domain");
  }
  for (const std::string& label : boundary_labels(tf.surface)) boundary_value(tf.boundary, label);

  const bool hyp = tf.mode == TraceMode::Hyperbolic;
  VerificationReport report;
  const auto& t = tf.values;

  if (tf.surface == SurfaceTag::T11) {
    const S& tb = tf.boundary.at("b");
    const S sign_b = hyp ? S{1} : S{-1};
    for (const FareyTriangle& tri : cx.triangles) {
      const S &x = t.at(tri.a), &y = t.at(tri.b), &z = t.at(tri.c);
      const S lhs = x * y * z;
      const S rhs = sq(x) + sq(y) + sq(z) + sign_b * tb - S{2};
      const double scale = max_mag<S>({lhs, sq(x), sq(y), sq(z), tb, S{2}});
      check(report, lhs, rhs, scale, tol, "triangle", "triangle " + triangle_str(tri.a, tri.b, tri.c),
            {tri.a, tri.b, tri.c});
      ++report.checked_triangles;
    }
    for (const FareyQuad& q : cx.quads) {
      const S &x = t.at(q.a), &y = t.at(q.b), &g = t.at(q.gamma), &h = t.at(q.gamma_prime);
      if (hyp) {
        const S lhs = g * h;
        const S rhs = sq(x) + sq(y) + tb - S{2};
        check(report, lhs, rhs, max_mag<S>({lhs, sq(x), sq(y), tb, S{2}}), tol, "flip", "flip " + flip_str(q),
              {q.a, q.b, q.gamma, q.gamma_prime});
      } else {
        const S lhs = g + h;
        const S rhs = x * y;
        check(report, lhs, rhs, max_mag<S>({g, h, rhs}), tol, "flip", "flip " + flip_str(q),
              {q.a, q.b, q.gamma, q.gamma_prime});
      }
      ++report.checked_flips;
    }
  } else {
    const S sum_b2 = total_square(tf.boundary);
    const S prod_b = total_product(tf.boundary);
    const double bscale = boundary_scale(tf.boundary);
    const double bterm = std::max(bscale * bscale, std::pow(bscale, 4));
    for (const FareyTriangle& tri : cx.triangles) {
      const S &x = t.at(tri.a), &y = t.at(tri.b), &z = t.at(tri.c);
      const S cx_ = pair_coefficient(tf.boundary, tri.a);
      const S cy = pair_coefficient(tf.boundary, tri.b);
      const S cz = pair_coefficient(tf.boundary, tri.c);
      const S xyz = x * y * z;
      const S squares = sq(x) + sq(y) + sq(z);
      const S linear = cx_ * x + cy * y + cz * z;
      S lhs, rhs;
      if (hyp) {
        lhs = xyz;
        rhs = squares + sum_b2 + prod_b + linear - S{4};
      } else {
        lhs = squares + xyz;
        rhs = linear + S{4} - sum_b2 - prod_b;
      }
      const double scale = std::max({max_mag<S>({xyz, sq(x), sq(y), sq(z), cx_ * x, cy * y, cz * z}), bterm, 4.0});
      check(report, lhs, rhs, scale, tol, "triangle", "triangle " + triangle_str(tri.a, tri.b, tri.c),
            {tri.a, tri.b, tri.c});
      ++report.checked_triangles;
    }
    for (const FareyQuad& q : cx.quads) {
      const S &x = t.at(q.a), &y = t.at(q.b), &g = t.at(q.gamma), &h = t.at(q.gamma_prime);
      if (hyp) {
        const S ca = pair_coefficient(tf.boundary, q.a);
        const S cb = pair_coefficient(tf.boundary, q.b);
        const S lhs = g * h;
        const S rhs = sq(x) + sq(y) + sum_b2 + prod_b + ca * x + cb * y - S{4};
        const double scale = std::max({max_mag<S>({lhs, sq(x), sq(y), ca * x, cb * y}), bterm, 4.0});
        check(report, lhs, rhs, scale, tol, "flip", "flip " + flip_str(q), {q.a, q.b, q.gamma, q.gamma_prime});
      } else {
        const S cg = pair_coefficient(tf.boundary, q.gamma);
        const S lhs = g + h;
        const S rhs = cg - x * y;
        const double scale = std::max(max_mag<S>({g, h, x * y}), bscale * bscale);
        check(report, lhs, rhs, scale, tol, "flip", "flip " + flip_str(q), {q.a, q.b, q.gamma, q.gamma_prime});
      }
      ++report.checked_flips;
    }
  }

  if (hyp) {
    for (const auto& [s, v] : t) range_check(report, v, true, tol, "t(" + s.str() + ")", {s});
    for (const auto& [label, v] : tf.boundary) range_check(report, v, false, tol, "t(" + label + ")", {});
  }
  report.finalize();
  return report;
}

template <class S>
BasicTraceFunction<S> convert_mode(const BasicTraceFunction<S>& tf, TraceMode target) {
  BasicTraceFunction<S> out = tf;
  if (tf.mode == target) return out;
  out.mode = target;
  for (auto& [label, v] : out.boundary) v = -v;
  if (tf.surface == SurfaceTag::S04) {
    for (auto& [s, v] : out.values) v = -v;
  }
  return out;
}

template <class S>
S fricke_vogt_residual(const S& a1, const S& a2, const S& a3, const S& a12, const S& a23, const S& a31,
                       const S& a123) {
  return sq(a123) - a123 * (a1 * a23 + a2 * a31 + a3 * a12 - a1 * a2 * a3) + sq(a1) + sq(a2) + sq(a3) + sq(a12) +
         sq(a23) + sq(a31) - a1 * a2 * a12 - a2 * a3 * a23 - a3 * a1 * a31 + a12 * a23 * a31 - S{4};
}

std::array<Complex, 7> permute_septuple(const std::array<Complex, 7>& s, const std::array<int, 4>& perm) {
  // Pair-trace slot of the partition in which boundary index 0 is paired with j.
  auto slot_for = [](int i, int j) {
    const int other = i == 0 ? j : (j == 0 ? i : -1);
    if (other == 1) return 3;  // {12|3 123} -> a12
    if (other == 2) return 5;  // {13|2 123} -> a31
    if (other == 3) return 4;  // {1 123|23} -> a23
    // Neither index is 0: use the complementary pair.
    const int comp = 6 - i - j;  // the index paired with 0
    return comp == 1 ? 3 : (comp == 2 ? 5 : 4);
  };
  static constexpr int boundary_slot[4] = {0, 1, 2, 6};
  std::array<Complex, 7> out{};
  for (int i = 0; i < 4; ++i) out[boundary_slot[perm[i]]] = s[boundary_slot[i]];
  for (int j = 1; j < 4; ++j) out[slot_for(perm[0], perm[j])] = s[slot_for(0, j)];
  return out;
}

Matrix2C word_matrix(const Matrix2C& A, const Matrix2C& B, std::string_view word) {
  Matrix2C out;
  const Matrix2C Ai = A.inverse(), Bi = B.inverse();
  for (char ch : word) {
    switch (ch) {
      case 'A': out = out * A; break;
      case 'B': out = out * B; break;
      case 'a': out = out * Ai; break;
      case 'b': out = out * Bi; break;
      default: throw Error(ErrorKind::ParseError, std::string("bad word letter '") + ch + "'");
    }
  }
  return out;
}

std::vector<std::string> reduced_words(int max_length) {
  std::vector<std::string> out{""};
  std::size_t begin = 0;
  for (int len = 1; len <= max_length; ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (char ch : {'A', 'B', 'a', 'b'}) {
        const std::string& w = out[i];
        if (!w.empty()) {
          const char last = w.back();
          if (last != ch && std::tolower(last) == std::tolower(ch)) continue;
        }
        out.push_back(w + ch);
      }
    }
    begin = end;
  }
  return out;
}

std::string inverse_word(std::string_view word) {
  std::string out(word.rbegin(), word.rend());
  for (char& ch : out) ch = std::isupper(static_cast<unsigned char>(ch)) ? std::tolower(ch) : std::toupper(ch);
  return out;
}

double helling_residual(const Matrix2C& X, const Matrix2C& Y) {
  const Complex fxy = (X * Y).trace();
  const Complex fxyi = (X * Y.inverse()).trace();
  const Complex prod = X.trace() * Y.trace();
  auto frob = [](const Matrix2C& m) {
    return std::sqrt(std::norm(m.a) + std::norm(m.b) + std::norm(m.c) + std::norm(m.d));
  };
  const double scale = std::max({std::abs(fxy), std::abs(fxyi), std::abs(prod), frob(X) * frob(Y)});
  return relative(std::abs(fxy + fxyi - prod), scale);
}

VerificationReport helling_check(const Matrix2C& A, const Matrix2C& B, int max_word_length, double tol) {
  require_unimodular(A, "A");
  require_unimodular(B, "B");
  const std::vector<std::string> words = reduced_words(max_word_length);
  std::vector<Matrix2C> mats;
  mats.reserve(words.size());
  for (const auto& w : words) mats.push_back(word_matrix(A, B, w));
  VerificationReport report;
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (std::size_t j = 0; j < words.size(); ++j) {
      const double r = helling_residual(mats[i], mats[j]);
      ++report.checked_pairs;
      if (r <= tol) {
        report.observe(r);
      } else {
        report.fail({"x=" + (words[i].empty() ? std::string("1") : words[i]) +
                         " y=" + (words[j].empty() ? std::string("1") : words[j]),
                     "helling", r, {}});
      }
    }
  }
  report.finalize();
  return report;
}

#define RECON_INSTANTIATE(S)                                                                                   \
  template void require_unimodular<S>(const Matrix2<S>&, std::string_view);                                    \
  template BasicTraceFunction<S> generate_t11<S>(const Matrix2<S>&, const Matrix2<S>&, int);                   \
  template BasicTraceFunction<S> generate_s04<S>(const Matrix2<S>&, const Matrix2<S>&, const Matrix2<S>&, int); \
  template S pair_coefficient<S>(const std::map<std::string, S>&, const Slope&);                              \
  template VerificationReport verify<S>(const BasicTraceFunction<S>&, double);                                 \
  template BasicTraceFunction<S> convert_mode<S>(const BasicTraceFunction<S>&, TraceMode);                     \
  template S fricke_vogt_residual<S>(const S&, const S&, const S&, const S&, const S&, const S&, const S&);

RECON_INSTANTIATE(Complex)
RECON_INSTANTIATE(ExactComplex)

#undef RECON_INSTANTIATE

}  // namespace recon
