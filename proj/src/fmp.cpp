#include "stabgeo/fmp.hpp"

#include <algorithm>
#include <cmath>

#include "stabgeo/optimize.hpp"

namespace stabgeo {

double gamma_star(int n) {
  if (n < 1) throw InvalidArgument("gamma_star needs n >= 1");
  const double num = std::pow(2.0 - std::pow(2.0, (n - 1.0) / n), 1.5);
  const double g = num / (122.0 * std::pow(static_cast<double>(n), 7));
  return g * g;
}

double sigma_ratio(double vk, double vc) {
  if (!(vk > 0) || !(vc > 0)) throw InvalidArgument("sigma needs positive volumes");
  return std::max(vc / vk, vk / vc);
}

double homothetic_distance(const BodyRef& k, const BodyRef& c) {
  const int n = dimension(k);
  if (n != dimension(c)) throw InvalidArgument("dimension mismatch");
  if (std::holds_alternative<Ball>(k) && std::holds_alternative<Ball>(c)) return 0.0;
  const BodyRef kk = scaled(k, std::pow(volume(k), -1.0 / n));
  const BodyRef cc = scaled(c, std::pow(volume(c), -1.0 / n));
  const auto* pk = std::get_if<ConvexPolygon>(&kk);
  const auto* pc = std::get_if<ConvexPolygon>(&cc);
  if (!pk || !pc || (pk->is_o_symmetric() && pc->is_o_symmetric()))
    return symmetric_difference_volume(kk, cc);
  // translation search; |K cap (x + C)|^(1/2) is concave in x, so one basin
  const double diam = std::max(pk->diameter(), pc->diameter());
  const Vec2 x0 = pk->centroid() - pc->centroid();
  auto obj = [&](std::span<const double> x) {
    const auto moved = pc->translated({x[0], x[1]});
    return pk->area() + moved.area() - 2 * intersection_area(*pk, moved);
  };
  NelderMeadOptions nm;
  nm.x_tol = 1e-8 * diam;
  auto r = nelder_mead(obj, {x0.x, x0.y}, {0.05 * diam, 0.05 * diam}, nm);
  auto r2 = nelder_mead(obj, r.x, {0.01 * diam, 0.01 * diam}, nm);
  if (r2.f < r.f) r = r2;
  if (!r.converged) throw ConvergenceFailure("translation search did not converge", r.x, r.f);
  return std::max(0.0, r.f);
}

FMPReport fmp_bound_check(const BodyRef& k, const BodyRef& c) {
  const int n = dimension(k);
  if (n != dimension(c)) throw InvalidArgument("dimension mismatch");
  FMPReport r;
  const double vk = volume(k), vc = volume(c);
  const double vm = volume(minkowski_midpoint(k, c));
  r.sigma = sigma_ratio(vk, vc);
  r.A = homothetic_distance(k, c);
  r.gamma_star = gamma_star(n);
  const double inv = 1.0 / n;
  const double fm = r.gamma_star * std::pow(r.sigma, -inv) * r.A * r.A;
  r.lhs_additive = 2.0 * std::pow(vm, inv);
  r.rhs_additive = (std::pow(vk, inv) + std::pow(vc, inv)) * (1.0 + fm);
  r.eta = (r.sigma - 1) * (r.sigma - 1) / (32.0 * n * r.sigma * r.sigma) + n * fm;
  r.lhs_product = vm;
  r.rhs_product = std::sqrt(vk * vc) * (1.0 + r.eta);
  return r;
}

BridgeSides product_bridge(int n, double s) {
  const double lhs = 0.5 * (std::pow(s, 1.0 / n) + 1.0);
  const double rhs =
      std::pow(s, 0.5 / n) * (1.0 + (s - 1) * (s - 1) / (32.0 * n * n * std::pow(s, (4.0 * n - 1) / (2.0 * n))));
  return {lhs, rhs};
}

}  // namespace stabgeo
