#include "recon/polygons.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "recon/error.hpp"

namespace recon {

namespace {

int slot(int i, int j) {
  if (i > j) std::swap(i, j);
  if (i == 1) return j - 2;  // 12, 13, 14
  if (i == 2) return j == 3 ? 3 : 4;  // 23, 24
  return 5;  // 34
}

double cross(Point a, Point b) { return a.real() * b.imag() - a.imag() * b.real(); }

double mean_length(const QuadMetric& q) {
  double s = 0;
  for (double x : q.d) s += x;
  return s / 6.0;
}

// Cayley–Menger determinant as 8·det(Gram) with v1 at the origin; squared
// lengths in the order 12, 13, 14, 23, 24, 34.
double cayley_menger(const std::array<double, 6>& s) {
  const double g22 = s[0], g33 = s[1], g44 = s[2];
  const double g23 = (s[0] + s[1] - s[3]) / 2;
  const double g24 = (s[0] + s[2] - s[4]) / 2;
  const double g34 = (s[1] + s[2] - s[5]) / 2;
  const double det = g22 * (g33 * g44 - g34 * g34) - g23 * (g23 * g44 - g34 * g24) + g24 * (g23 * g34 - g33 * g24);
  return 8 * det;
}

std::array<double, 6> squares(const QuadMetric& q) {
  std::array<double, 6> s;
  for (int i = 0; i < 6; ++i) s[i] = q.d[i] * q.d[i];
  return s;
}

// Apex of the triangle on base 0 → (base, 0) with the given side lengths, in
// the upper half-plane. Negative discriminants within `slack` are clamped.
bool place_apex(double base, double r0, double r1, double slack, Point& out) {
  const double x = (base * base + r0 * r0 - r1 * r1) / (2 * base);
  const double y2 = r0 * r0 - x * x;
  if (y2 < -slack * r0 * r0) return false;
  out = {x, std::sqrt(std::max(y2, 0.0))};
  return true;
}

std::string pair_key(int i, int j) { return std::to_string(i) + "-" + std::to_string(j); }

std::string triple_key(int i, int j, int k) {
  return std::to_string(i) + "-" + std::to_string(j) + "-" + std::to_string(k);
}

void check_triangle(double a, double b, double c, double tol, ErrorKind kind, const std::string& where) {
  const double m = std::max({a, b, c});
  if (a + b + c - 2 * m <= tol * m) {
    throw Error(kind, "triangle inequality fails on " + where);
  }
}

std::vector<Quad4> all_quads(int n) {
  std::vector<Quad4> out;
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b)
      for (int c = b + 1; c <= n; ++c)
        for (int d = c + 1; d <= n; ++d) out.push_back({a, b, c, d});
  return out;
}

// Homogeneous coordinates of a point of R ∪ {∞}.
std::array<double, 2> homog(double x) {
  if (std::isinf(x)) return {1.0, 0.0};
  return {x, 1.0};
}

double hdet(const std::array<double, 2>& u, const std::array<double, 2>& v) { return u[0] * v[1] - u[1] * v[0]; }

}  // namespace

double& QuadMetric::at(int i, int j) { return d[slot(i, j)]; }
double QuadMetric::at(int i, int j) const { return d[slot(i, j)]; }

QuadMetric QuadMetric::from_points(const std::array<Point, 4>& v) {
  QuadMetric q;
  for (int i = 1; i <= 4; ++i)
    for (int j = i + 1; j <= 4; ++j) q.at(i, j) = std::abs(v[i - 1] - v[j - 1]);
  return q;
}

std::vector<Point> normalize_pose(std::vector<Point> pts) {
  if (pts.size() < 2) return pts;
  const Point origin = pts[0];
  for (Point& p : pts) p -= origin;
  const Point dir = std::conj(pts[1]) / std::abs(pts[1]);
  for (Point& p : pts) p *= dir;
  pts[0] = 0;
  pts[1] = {pts[1].real(), 0.0};
  return pts;
}

bool is_strictly_convex(const std::vector<Point>& pts) {
  const std::size_t n = pts.size();
  if (n < 3) return false;
  double turning = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point e1 = pts[(i + 1) % n] - pts[i];
    const Point e2 = pts[(i + 2) % n] - pts[(i + 1) % n];
    if (!(cross(e1, e2) > 0)) return false;
    turning += std::arg(e2 / e1);
  }
  return std::fabs(turning - 2 * std::numbers::pi) < 1e-6;
}

double planarity_residual(const QuadMetric& q) { return cayley_menger(squares(q)); }

double planarity_relative(const QuadMetric& q) {
  const double m = mean_length(q);
  return planarity_residual(q) / std::pow(m, 6);
}

DiagonalRoots solve_diagonal(const QuadMetric& q, QuadDiagonal missing) {
  const int idx = missing == QuadDiagonal::D13 ? slot(1, 3) : slot(2, 4);
  std::array<double, 6> s = squares(q);
  double scale = 0;
  for (int i = 0; i < 6; ++i) {
    if (i == idx) continue;
    if (!(q.d[i] > 0)) throw Error(ErrorKind::DomainError, "lengths must be positive");
    scale += s[i];
  }
  scale /= 5;
  // The determinant is quadratic in the missing squared length; recover the
  // coefficients from three evaluations.
  auto f = [&](double x) {
    s[idx] = x;
    return cayley_menger(s);
  };
  const double f0 = f(0), f1 = f(scale), f2 = f(2 * scale);
  const double a = (f2 - 2 * f1 + f0) / (2 * scale * scale);
  const double b = (f1 - f0) / scale - a * scale;
  const double c = f0;
  if (a == 0) throw Error(ErrorKind::Degenerate, "planarity constraint is not quadratic");
  const double disc = b * b - 4 * a * c;
  // A double root only resolves to about sqrt(eps), so near-zero
  // discriminants count as coincident.
  if (disc < -1e-10 * b * b) throw Error(ErrorKind::NoRealRoot, "discriminant " + std::to_string(disc) + " < 0");
  if (disc <= 1e-10 * b * b) throw Error(ErrorKind::Degenerate, "both completions coincide (flat configuration)");
  const double sq = std::sqrt(disc);
  const double t = -(b + (b < 0 ? -sq : sq)) / 2;
  double x1 = t / a;
  double x2 = t != 0 ? c / t : x1;
  if (x1 > x2) std::swap(x1, x2);
  if (x1 < -1e-9 * scale) throw Error(ErrorKind::NoRealRoot, "no real length for the lower root");
  return {std::sqrt(std::max(x1, 0.0)), std::sqrt(x2)};
}

PlanarPolygon realize_quad(const QuadMetric& q, double tol) {
  for (double x : q.d) {
    if (!(x > 0) || !std::isfinite(x)) throw Error(ErrorKind::DomainError, "lengths must be positive and finite");
  }
  const double rel = planarity_relative(q);
  if (!(std::fabs(rel) <= tol)) {
    throw Error(ErrorKind::NotPlanar, "relative Cayley-Menger residual " + std::to_string(rel));
  }
  for (QuadDiagonal diag : {QuadDiagonal::D13, QuadDiagonal::D24}) {
    DiagonalRoots roots;
    try {
      roots = solve_diagonal(q, diag);
    } catch (const Error&) {
      continue;  // flat data; the triangle check below reports it
    }
    const double d = diag == QuadDiagonal::D13 ? q.at(1, 3) : q.at(2, 4);
    if (std::fabs(d - roots.high) > std::fabs(d - roots.low)) {
      throw Error(ErrorKind::NotConvex, std::string(diag == QuadDiagonal::D13 ? "diagonal 1-3" : "diagonal 2-4") +
                                            " is the smaller root");
    }
  }
  for (const auto& [i, j, k] : {std::array{1, 2, 3}, std::array{1, 2, 4}, std::array{1, 3, 4}, std::array{2, 3, 4}}) {
    check_triangle(q.at(i, j), q.at(j, k), q.at(i, k), tol, ErrorKind::DegenerateTriangle, triple_key(i, j, k));
  }
  const double d12 = q.at(1, 2);
  Point v3, v4;
  if (!place_apex(d12, q.at(1, 3), q.at(2, 3), tol, v3) || !place_apex(d12, q.at(1, 4), q.at(2, 4), tol, v4)) {
    throw Error(ErrorKind::DegenerateTriangle, "cannot place apex over 1-2");
  }
  PlanarPolygon out{{Point(0, 0), Point(d12, 0), v3, v4}};
  const double d34 = std::abs(v3 - v4);
  if (std::fabs(d34 - q.at(3, 4)) > std::sqrt(tol) * q.at(3, 4)) {
    throw Error(ErrorKind::NotPlanar, "realised 3-4 distance " + std::to_string(d34) + " differs from " +
                                          std::to_string(q.at(3, 4)));
  }
  if (!is_strictly_convex(out.vertices)) throw Error(ErrorKind::NotConvex, "realisation is not strictly convex");
  return out;
}

std::complex<double> thurston_triangle(Point A, Point B, Point C) {
  if (std::abs(B - A) == 0) throw Error(ErrorKind::Collinear, "A and B coincide");
  const std::complex<double> z = (C - A) / (B - A);
  if (std::fabs(z.imag()) <= 1e-12 * std::max(1.0, std::abs(z))) {
    throw Error(ErrorKind::Collinear, "points are collinear");
  }
  if (z.imag() < 0) throw Error(ErrorKind::Collinear, "triangle is clockwise");
  return z;
}

TriangleInvariants triangle_invariants(Point A, Point B, Point C) {
  return {thurston_triangle(A, B, C), thurston_triangle(B, C, A), thurston_triangle(C, A, B)};
}

ThurstonQuadInvariant quad_invariant_at(const PlanarPolygon& p, int start) {
  if (p.vertices.size() != 4 || !is_strictly_convex(p.vertices)) {
    throw Error(ErrorKind::NotConvex, "quad invariant needs a strictly convex counterclockwise quadrilateral");
  }
  const auto& v = p.vertices;
  auto at = [&](int k) {
    const int i = ((k % 4) + 4) % 4;
    return thurston_triangle(v[i], v[(i + 1) % 4], v[(i + 3) % 4]);
  };
  const int s = ((start % 4) + 4) % 4;
  return {at(s), at(s + 2), s};
}

ThurstonQuadInvariant quad_invariant(const PlanarPolygon& p, QuadDiagonal diagonal) {
  return quad_invariant_at(p, diagonal == QuadDiagonal::D24 ? 0 : 1);
}

ThurstonQuadInvariant flip_invariant(const ThurstonQuadInvariant& inv) {
  const std::complex<double> one(1, 0);
  const auto& z = inv.z;
  const auto& w = inv.w;
  return {(w - one) / (w * (one - z)), (z - one) / ((one - w) * z), (inv.start + 1) % 4};
}

std::string quad_key(const Quad4& q) {
  return std::to_string(q[0]) + "-" + std::to_string(q[1]) + "-" + std::to_string(q[2]) + "-" + std::to_string(q[3]);
}

std::vector<Overlap> find_inconsistencies(const std::map<Quad4, QuadMetric>& quads, double tol) {
  struct Entry {
    Quad4 quad;
    double length;
  };
  std::map<std::pair<int, int>, std::vector<Entry>> by_segment;
  for (const auto& [key, metric] : quads) {
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) by_segment[{key[i], key[j]}].push_back({key, metric.at(i + 1, j + 1)});
  }
  std::vector<Overlap> out;
  for (const auto& [seg, entries] : by_segment) {
    const Entry& ref = entries.front();
    for (std::size_t k = 1; k < entries.size(); ++k) {
      const Entry& e = entries[k];
      if (std::fabs(e.length - ref.length) > tol * std::max(e.length, ref.length)) {
        out.push_back({seg, ref.quad, e.quad, ref.length, e.length});
      }
    }
  }
  return out;
}

PlanarPolygon reconstruct_polygon(int n, const std::map<Quad4, QuadMetric>& quads, double tol) {
  if (n < 4) throw Error(ErrorKind::DomainError, "need at least four vertices");
  for (const Quad4& q : all_quads(n)) {
    if (!quads.contains(q)) throw Error(ErrorKind::InfeasiblePlacement, "missing quadrilateral " + quad_key(q));
  }
  const std::vector<Overlap> conflicts = find_inconsistencies(quads, tol);
  if (!conflicts.empty()) {
    std::string msg;
    for (const Overlap& o : conflicts) {
      if (!msg.empty()) msg += "; ";
      msg += "segment " + pair_key(o.segment.first, o.segment.second) + ": quad " + quad_key(o.first) + " has " +
             std::to_string(o.first_length) + ", quad " + quad_key(o.second) + " has " + std::to_string(o.second_length);
    }
    throw Error(ErrorKind::Inconsistent, msg);
  }
  for (const auto& [key, metric] : quads) {
    try {
      realize_quad(metric, tol);
    } catch (const Error& e) {
      const bool convexity = e.kind() == ErrorKind::NotConvex;
      throw Error(convexity ? ErrorKind::NotConvexResult : ErrorKind::InfeasiblePlacement,
                  "quad " + quad_key(key) + ": " + e.what());
    }
  }
  // Lengths from the smallest 4-subset containing each segment.
  auto length = [&](int i, int j) {
    std::set<int> s{i, j};
    for (int v = 1; s.size() < 4; ++v) s.insert(v);
    Quad4 q{};
    std::copy(s.begin(), s.end(), q.begin());
    const int a = static_cast<int>(std::distance(s.begin(), s.find(i))) + 1;
    const int b = static_cast<int>(std::distance(s.begin(), s.find(j))) + 1;
    return quads.at(q).at(a, b);
  };
  std::vector<Point> pts(n);
  const double d12 = length(1, 2);
  pts[0] = 0;
  pts[1] = {d12, 0};
  for (int k = 3; k <= n; ++k) {
    if (!place_apex(d12, length(1, k), length(2, k), tol, pts[k - 1])) {
      throw Error(ErrorKind::InfeasiblePlacement, "circles about 1 and 2 miss for vertex " + std::to_string(k));
    }
  }
  for (const auto& [key, metric] : quads) {
    for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) {
        const double want = metric.at(i + 1, j + 1);
        const double got = std::abs(pts[key[i] - 1] - pts[key[j] - 1]);
        if (std::fabs(got - want) > std::sqrt(tol) * want) {
          throw Error(ErrorKind::InfeasiblePlacement, "quad " + quad_key(key) + " segment " +
                                                          pair_key(key[i], key[j]) + " realised as " +
                                                          std::to_string(got) + ", expected " + std::to_string(want));
        }
      }
    }
  }
  if (!is_strictly_convex(pts)) throw Error(ErrorKind::NotConvexResult, "placed vertices are not strictly convex");
  return {pts};
}

std::map<Quad4, QuadMetric> tabulate_quads(const std::vector<Point>& pts) {
  std::map<Quad4, QuadMetric> out;
  for (const Quad4& q : all_quads(static_cast<int>(pts.size()))) {
    out[q] = QuadMetric::from_points({pts[q[0] - 1], pts[q[1] - 1], pts[q[2] - 1], pts[q[3] - 1]});
  }
  return out;
}

std::map<std::pair<int, int>, double> tabulate_lengths(const std::vector<Point>& pts) {
  std::map<std::pair<int, int>, double> out;
  const int n = static_cast<int>(pts.size());
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) out[{i, j}] = std::abs(pts[i - 1] - pts[j - 1]);
  return out;
}

PlanarPolygon realize_from_edge_lengths(int n, const std::map<std::pair<int, int>, double>& lengths, double tol) {
  auto len = [&](int i, int j) {
    auto it = lengths.find({std::min(i, j), std::max(i, j)});
    if (it == lengths.end()) throw Error(ErrorKind::DomainError, "missing length " + pair_key(i, j));
    if (!(it->second > 0)) throw Error(ErrorKind::DomainError, "length " + pair_key(i, j) + " must be positive");
    return it->second;
  };
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      for (int k = j + 1; k <= n; ++k)
        check_triangle(len(i, j), len(j, k), len(i, k), tol, ErrorKind::TriangleViolation, triple_key(i, j, k));
  std::map<Quad4, QuadMetric> quads;
  for (const Quad4& q : all_quads(n)) {
    QuadMetric m;
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b) m.at(a + 1, b + 1) = len(q[a], q[b]);
    quads[q] = m;
  }
  for (const auto& [q, m] : quads) {
    const double rel = planarity_relative(m);
    if (!(std::fabs(rel) <= tol)) {
      throw Error(ErrorKind::NotPlanar, "4-subset " + quad_key(q) + " has relative residual " + std::to_string(rel));
    }
  }
  for (const auto& [q, m] : quads) {
    for (QuadDiagonal diag : {QuadDiagonal::D13, QuadDiagonal::D24}) {
      const DiagonalRoots roots = solve_diagonal(m, diag);
      const double d = diag == QuadDiagonal::D13 ? m.at(1, 3) : m.at(2, 4);
      if (std::fabs(d - roots.high) > std::fabs(d - roots.low)) {
        const std::string seg = diag == QuadDiagonal::D13 ? pair_key(q[0], q[2]) : pair_key(q[1], q[3]);
        throw Error(ErrorKind::LargestRootViolation,
                    "diagonal " + seg + " of 4-subset " + quad_key(q) + " is the smaller root");
      }
    }
  }
  return reconstruct_polygon(n, quads, tol);
}

double shear_coordinate(const IdealQuad& q) {
  const auto& x = q.x;
  for (int i = 0; i < 4; ++i) {
    if (std::isnan(x[i])) throw Error(ErrorKind::DomainError, "ideal point is NaN");
    for (int j = i + 1; j < 4; ++j) {
      if (x[i] == x[j]) throw Error(ErrorKind::DomainError, "ideal points must be distinct");
    }
  }
  // Strict circular order: exactly one cyclic descent (∞ counts as largest).
  int descents = 0;
  for (int i = 0; i < 4; ++i) descents += x[(i + 1) % 4] < x[i] ? 1 : 0;
  if (descents != 1) throw Error(ErrorKind::DomainError, "ideal points are not in increasing circular order");

  const int d0 = q.diagonal == QuadDiagonal::D13 ? 0 : 1;
  const auto P0 = homog(x[d0]);
  const auto P1 = homog(x[d0 + 2]);
  // Orientation-preserving Möbius map sending P0 to 0 and P1 to ∞.
  const double orient = hdet(P0, P1) > 0 ? 1.0 : -1.0;
  auto g = [&](double t) {
    const auto v = homog(t);
    return orient * hdet(v, P0) / hdet(v, P1);
  };
  const double a = g(x[(d0 + 1) % 4]);
  const double b = g(x[(d0 + 3) % 4]);
  // In the normalised picture the incircle tangency point of triangle
  // (0, ∞, t) on the diagonal is i·|t|. Left of the upward axis is t < 0.
  const double left = a < 0 ? a : b;
  const double right = a < 0 ? b : a;
  return -right / left;
}

}  // namespace recon
