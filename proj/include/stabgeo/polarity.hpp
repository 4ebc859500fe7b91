#pragma once

#include <span>
#include <vector>

#include "stabgeo/body.hpp"

namespace stabgeo {

struct SantaloResult {
  std::vector<double> point;  // Santalo point z
  double volume = 0;
  double polar_volume = 0;    // |K^z|
  double volume_product = 0;  // |K| |K^z|
  // kappa_n^2 / (|K| |K^z|) - 1, the least eps with (1+eps)|K||K^z| >= kappa_n^2
  double bs_deficit = 0;
  double certificate_residual = 0;  // |centroid(K^z) - z|
};

struct SantaloOptions {
  double certificate_tol = 1e-6;  // relative to diam K
  int max_rounds = 8;
};

// K^z = {x : <x - z, y - z> <= 1 for all y in K}; vertex j is z + n_j / <n_j, v_j - z>.
ConvexPolygon polar(const ConvexPolygon& k, Vec2 z);
// Balls and revolution bodies only about the origin.
BodyRef polar(const BodyRef& k, std::span<const double> z);

SantaloResult santalo_point(const BodyRef& k, const SantaloOptions& opt = {});
SantaloResult bs_deficit(const BodyRef& k, const SantaloOptions& opt = {});

// ln(R/r) minimised over axis scalings (t, y) -> (a t, y).
double bm_distance_to_ball(const RevolutionBody& k);
// ln(R/r) of the meridian after scaling the axis by a
double bm_ratio_at_scale(const RevolutionBody& k, double a);

// volume of one cap {x in B^n : x_0 >= 1 - h}
double cap_volume(int n, double h);
// h with cap_volume(n, h) = eps, bisection to 1e-12
double cap_height(int n, double eps);
// B^n with two opposite caps of volume eps removed
RevolutionBody cap_cut_body(int n, double eps, std::size_t samples = 2049);

}  // namespace stabgeo
