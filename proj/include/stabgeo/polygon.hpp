#pragma once

#include <optional>
#include <vector>

#include "stabgeo/common.hpp"

namespace stabgeo {

// Planar convex body, vertices counterclockwise, no collinear or repeated vertices.
class ConvexPolygon {
 public:
  // Validates the vertex sequence; throws DegenerateInput on zero area and
  // InvalidArgument on non-convex or clockwise input.
  explicit ConvexPolygon(std::vector<Vec2> ccw, double tol = 1e-12);

  // Convex hull of arbitrary points (collinear points dropped).
  static ConvexPolygon hull(std::vector<Vec2> pts);
  static ConvexPolygon regular(int k, double radius, double phase = 0.0);
  static ConvexPolygon box(double x0, double y0, double x1, double y1);

  const std::vector<Vec2>& vertices() const { return v_; }
  std::size_t size() const { return v_.size(); }

  double area() const;
  Vec2 centroid() const;
  double support(Vec2 w) const;
  double diameter() const;
  // distance-tolerant membership; boundary counts as inside
  bool contains(Vec2 p, double tol = 0.0) const;
  // strictly inside, margin measured along edge normals
  bool interior(Vec2 p, double margin = 0.0) const;
  bool is_o_symmetric(double tol = 1e-9) const;

  ConvexPolygon translated(Vec2 d) const;
  ConvexPolygon scaled(double s) const;
  // linear map x -> (a x, b y)
  ConvexPolygon diag_scaled(double a, double b) const;

 private:
  struct Trusted {};
  ConvexPolygon(std::vector<Vec2> v, Trusted) : v_(std::move(v)) {}
  friend ConvexPolygon minkowski_sum(const ConvexPolygon&, const ConvexPolygon&);
  std::vector<Vec2> v_;
};

ConvexPolygon minkowski_sum(const ConvexPolygon& a, const ConvexPolygon& b);

// Sutherland-Hodgman against a convex clipper; nullopt if the overlap has no area.
std::optional<ConvexPolygon> intersect(const ConvexPolygon& a, const ConvexPolygon& b);
double intersection_area(const ConvexPolygon& a, const ConvexPolygon& b);

// Drop repeated and collinear vertices from a ccw ring.
std::vector<Vec2> simplify_ring(const std::vector<Vec2>& ring, double rel_tol = 1e-14);

// Exact: the maximum of |h_a - h_b| is attained at an edge normal of a or b.
double hausdorff_distance(const ConvexPolygon& a, const ConvexPolygon& b);

}  // namespace stabgeo
