#pragma once

#include <array>
#include <complex>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace recon {

using Point = std::complex<double>;

/// Six lengths on four labelled points v1..v4 in cyclic order: sides 12, 23,
/// 34, 14 and diagonals 13, 24.
struct QuadMetric {
  std::array<double, 6> d{};  // 12, 13, 14, 23, 24, 34

  double& at(int i, int j);
  double at(int i, int j) const;
  static QuadMetric from_points(const std::array<Point, 4>& v);
};

enum class QuadDiagonal { D13, D24 };

/// Counterclockwise vertex list.
struct PlanarPolygon {
  std::vector<Point> vertices;
};

/// Translate v1 to the origin and rotate v2 onto the positive real axis.
std::vector<Point> normalize_pose(std::vector<Point> pts);
bool is_strictly_convex(const std::vector<Point>& pts);

/// Cayley–Menger determinant of the four points, i.e. 288·volume², which
/// vanishes exactly when they lie in a plane.
double planarity_residual(const QuadMetric& q);
/// planarity_residual over (mean length)^6, the degree of the determinant.
double planarity_relative(const QuadMetric& q);

struct DiagonalRoots {
  double low = 0;
  double high = 0;
};

/// Both lengths for the missing diagonal that make the four points planar,
/// ascending. The entry of `q` for that diagonal is ignored.
/// Throws NoRealRoot or Degenerate (coincident roots).
DiagonalRoots solve_diagonal(const QuadMetric& q, QuadDiagonal missing);

/// Checks, in order: planarity (NotPlanar), each diagonal is the larger root
/// (NotConvex), strict triangle inequalities (DegenerateTriangle); then places
/// v1 = 0, v2 on the positive axis and v3, v4 above it.
PlanarPolygon realize_quad(const QuadMetric& q, double tol = 1e-9);

/// z_A = (C − A)/(B − A). Throws Collinear for degenerate or clockwise triples.
std::complex<double> thurston_triangle(Point A, Point B, Point C);

struct TriangleInvariants {
  std::complex<double> zA, zB, zC;
};
TriangleInvariants triangle_invariants(Point A, Point B, Point C);

/// (z, w) with z the invariant at vertex `start` and w at the opposite vertex;
/// the marked diagonal joins the other two vertices. start 0 marks v2v4,
/// start 1 marks v1v3.
struct ThurstonQuadInvariant {
  std::complex<double> z, w;
  int start = 0;

  QuadDiagonal diagonal() const { return start % 2 == 0 ? QuadDiagonal::D24 : QuadDiagonal::D13; }
};

/// Throws NotConvex unless the four points are strictly convex and CCW.
ThurstonQuadInvariant quad_invariant(const PlanarPolygon& p, QuadDiagonal diagonal);
ThurstonQuadInvariant quad_invariant_at(const PlanarPolygon& p, int start);

/// u = (w − 1)/(w(1 − z)), v = (z − 1)/((1 − w)z); the other diagonal.
ThurstonQuadInvariant flip_invariant(const ThurstonQuadInvariant& inv);

using Quad4 = std::array<int, 4>;  // sorted 1-based vertex labels

struct Overlap {
  std::pair<int, int> segment;
  Quad4 first, second;
  double first_length = 0, second_length = 0;
};

std::string quad_key(const Quad4& q);

/// All pairs of quadrilaterals whose shared segment carries different lengths.
std::vector<Overlap> find_inconsistencies(const std::map<Quad4, QuadMetric>& quads, double tol = 1e-9);

/// Rebuild a convex n-gon from the lengths of all its vertex quadrilaterals.
/// Only segments shared between quadrilaterals are compared; the
/// quadrilateral metrics are then realised by the placement.
PlanarPolygon reconstruct_polygon(int n, const std::map<Quad4, QuadMetric>& quads, double tol = 1e-9);

std::map<Quad4, QuadMetric> tabulate_quads(const std::vector<Point>& pts);
std::map<std::pair<int, int>, double> tabulate_lengths(const std::vector<Point>& pts);

/// Checks every triple (TriangleViolation), every 4-subset (NotPlanar), every
/// diagonal against the larger root (LargestRootViolation), then reconstructs.
PlanarPolygon realize_from_edge_lengths(int n, const std::map<std::pair<int, int>, double>& lengths,
                                        double tol = 1e-9);

/// Four points of R ∪ {∞} (infinity as HUGE_VAL) in increasing circular order.
struct IdealQuad {
  std::array<double, 4> x{};
  QuadDiagonal diagonal = QuadDiagonal::D24;  // D13 joins x1 x3, D24 joins x2 x4
};

/// Exponential of the signed distance from the left to the right incircle
/// tangency point on the marked diagonal. Throws DomainError for repeated
/// points or points out of circular order.
double shear_coordinate(const IdealQuad& q);

}  // namespace recon
