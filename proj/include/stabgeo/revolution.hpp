#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "stabgeo/common.hpp"
#include "stabgeo/polygon.hpp"

namespace stabgeo {

// o-symmetric body of revolution in R^n about coordinate axis 0, stored as the
// upper half of its meridian: the piecewise-linear profile through (t_i, phi_i).
// Everything (volume, support, polar, sums) is exact for that polygonal meridian.
class RevolutionBody {
 public:
  // t strictly increasing and symmetric, phi even, concave, positive inside.
  RevolutionBody(int dim, std::vector<double> t, std::vector<double> phi, double tol = 1e-9);

  // From an upper chain that is symmetric up to rounding; mirrors the left half.
  static RevolutionBody from_chain(int dim, const std::vector<Vec2>& chain);
  // Uniform t grid on [-alpha, alpha], symmetrised and projected to its concave majorant.
  static RevolutionBody from_function(int dim, double alpha, const std::function<double(double)>& phi,
                                      std::size_t samples = 2049);
  // Samples uniform in angle: t = -r cos(theta).
  static RevolutionBody ball(int dim, double radius = 1.0, std::size_t samples = 2049);
  // Ball of the given radius cut to |t| <= cut, samples uniform in angle.
  static RevolutionBody ball_slab(int dim, double radius, double cut, std::size_t samples = 2049);
  static RevolutionBody cylinder(int dim, double half_length, double radius);

  int dim() const { return dim_; }
  double alpha() const { return t_.back(); }
  const std::vector<double>& t() const { return t_; }
  const std::vector<double>& phi() const { return phi_; }
  std::size_t size() const { return t_.size(); }
  std::vector<Vec2> chain() const;
  // full meridian section as a planar polygon
  ConvexPolygon meridian() const;

  // interpolated profile, 0 outside [-alpha, alpha]
  double profile(double t) const;
  double max_profile() const;
  double volume() const { return volume_; }
  // support in the meridian plane, w_perp >= 0
  double meridian_support(double w_axis, double w_perp) const;
  double support(std::span<const double> w) const;
  double diameter() const;

  RevolutionBody scaled(double s) const;
  // (t, phi) -> (a t, c phi)
  RevolutionBody axis_scaled(double a, double c = 1.0) const;

 private:
  struct Trusted {};
  RevolutionBody(int dim, std::vector<double> t, std::vector<double> phi, Trusted);
  void compute_volume();
  int dim_;
  std::vector<double> t_, phi_;
  double volume_ = 0;
};

// exact integral of the linear interpolant between p and q raised to power k, times h
double power_segment_integral(double h, double p, double q, int k);

// Upper concave chain of a point set, left to right, collinear points dropped.
std::vector<Vec2> upper_hull(std::vector<Vec2> pts);
// Upper chain of the Minkowski sum of two meridians (edge merge by slope).
std::vector<Vec2> minkowski_chain(const std::vector<Vec2>& a, const std::vector<Vec2>& b);
// Upper chain of the polar of an o-symmetric meridian about the origin.
std::vector<Vec2> polar_chain(const std::vector<Vec2>& chain);

RevolutionBody minkowski_midpoint(const RevolutionBody& a, const RevolutionBody& b);
RevolutionBody polar(const RevolutionBody& k);
// coaxial: sections are concentric so the integrand is |phi1^(n-1) - phi2^(n-1)|
double symmetric_difference_volume(const RevolutionBody& a, const RevolutionBody& b);
bool contains(const RevolutionBody& outer, const RevolutionBody& inner, double tol = 1e-9);
// signed worst excess of inner over outer (<= 0 when contained)
double containment_excess(const RevolutionBody& outer, const RevolutionBody& inner);
RevolutionBody intersection(const RevolutionBody& a, const RevolutionBody& b);
RevolutionBody convex_hull_union(std::span<const RevolutionBody> bodies);
double hausdorff_distance(const RevolutionBody& a, const RevolutionBody& b);

}  // namespace stabgeo
