#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "stabgeo/common.hpp"
#include "stabgeo/polygon.hpp"
#include "stabgeo/revolution.hpp"

namespace stabgeo {

struct Ball {
  int dim;
  double radius;
};

using BodyRef = std::variant<RevolutionBody, ConvexPolygon, Ball>;

Ball make_ball(int dim, double radius);

int dimension(const BodyRef& k);
double volume(const BodyRef& k);
double support_function(const BodyRef& k, std::span<const double> w);
double diameter(const BodyRef& k);
BodyRef scaled(const BodyRef& k, double s);
bool is_o_symmetric(const BodyRef& k);

// 1/2 (K + C). Ball pairs stay balls; a ball paired with a revolution body is
// converted to a fine ball profile.
BodyRef minkowski_midpoint(const BodyRef& k, const BodyRef& c);
double symmetric_difference_volume(const BodyRef& k, const BodyRef& c);
double hausdorff_distance(const BodyRef& k, const BodyRef& c);

struct McEstimate {
  double estimate;
  double std_error;
};
McEstimate mc_volume(const BodyRef& k, std::uint64_t samples, std::uint64_t seed,
                     Exec exec = Exec::parallel);
// Monte-Carlo volume of K delta C (both bodies in the same dimension and frame).
McEstimate mc_symmetric_difference(const BodyRef& k, const BodyRef& c, std::uint64_t samples,
                                   std::uint64_t seed, Exec exec = Exec::parallel);

// K contained in C, checked by support functions at `directions` directions
// (in the meridian half-plane for revolution bodies, on the circle for polygons).
bool support_contains(const BodyRef& outer, const BodyRef& inner, int directions = 64,
                      double tol = 1e-9);

RevolutionBody as_revolution(const BodyRef& k, std::size_t samples = 4097);

}  // namespace stabgeo
