#pragma once

#include "stabgeo/body.hpp"

namespace stabgeo {

struct FMPReport {
  double sigma = 1;
  double A = 0;
  double gamma_star = 0;
  // |K + C|^(1/n)  vs  (|K|^(1/n) + |C|^(1/n)) (1 + gamma* sigma^(-1/n) A^2)
  double lhs_additive = 0, rhs_additive = 0;
  // |(K + C)/2|  vs  sqrt(|K||C|) (1 + eta)
  double lhs_product = 0, rhs_product = 0;
  double eta = 0;  // (sigma-1)^2 / (32 n sigma^2) + n gamma* sigma^(-1/n) A^2
};

double gamma_star(int n);
double sigma_ratio(double vol_k, double vol_c);
// min over x of |alpha K delta (x + beta C)|, both scaled to unit volume
double homothetic_distance(const BodyRef& k, const BodyRef& c);
FMPReport fmp_bound_check(const BodyRef& k, const BodyRef& c);

// Both sides of 1/2 (|K|^(1/n) + |C|^(1/n)) >= |K|^(1/2n) |C|^(1/2n) [1 + (s-1)^2 / (32 n^2 s^((4n-1)/2n))]
// for |C| = 1, |K| = s.
struct BridgeSides {
  double lhs, rhs;
};
BridgeSides product_bridge(int n, double sigma);

}  // namespace stabgeo
