#include "stabgeo/polarity.hpp"

#include <algorithm>
#include <boost/math/special_functions/beta.hpp>
#include <cmath>

#include "stabgeo/optimize.hpp"

namespace stabgeo {

namespace {

struct PolarArea {
  double area;
  Vec2 centroid;  // relative to z
};

// area and centroid of K^z - z; area is +inf when z is not interior
PolarArea polar_area(const ConvexPolygon& k, Vec2 z) {
  const auto& v = k.vertices();
  const std::size_t n = v.size();
  std::vector<Vec2> w(n);
  for (std::size_t j = 0; j < n; ++j) {
    const Vec2 e = v[(j + 1) % n] - v[j];
    const Vec2 nrm{e.y, -e.x};
    const double d = dot(nrm, v[j] - z);
    if (!(d > 0)) return {INFINITY, {0, 0}};
    w[j] = (1.0 / d) * nrm;
  }
  double a = 0, cx = 0, cy = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const Vec2 p = w[j], q = w[(j + 1) % n];
    const double c = cross(p, q);
    a += c;
    cx += (p.x + q.x) * c;
    cy += (p.y + q.y) * c;
  }
  return {0.5 * a, {cx / (3 * a), cy / (3 * a)}};
}

SantaloResult finish(double vol, double pvol, int n, std::vector<double> z, double resid) {
  SantaloResult r;
  r.point = std::move(z);
  r.volume = vol;
  r.polar_volume = pvol;
  r.volume_product = vol * pvol;
  const double kn = unit_ball_volume(n);
  r.bs_deficit = kn * kn / r.volume_product - 1.0;
  r.certificate_residual = resid;
  return r;
}

bool is_origin(std::span<const double> z) {
  for (double v : z)
    if (v != 0) return false;
  return true;
}

}  // namespace

ConvexPolygon polar(const ConvexPolygon& k, Vec2 z) {
  const auto& v = k.vertices();
  const std::size_t n = v.size();
  std::vector<Vec2> w(n);
  for (std::size_t j = 0; j < n; ++j) {
    const Vec2 e = v[(j + 1) % n] - v[j];
    const Vec2 nrm{e.y, -e.x};
    const double d = dot(nrm, v[j] - z);
    if (!(d > 1e-14 * norm(e) * k.diameter())) throw InvalidCenter("center is not interior to the polygon");
    w[j] = z + (1.0 / d) * nrm;
  }
  return ConvexPolygon(simplify_ring(w), 1e-9);
}

BodyRef polar(const BodyRef& k, std::span<const double> z) {
  if (static_cast<int>(z.size()) != dimension(k)) throw InvalidArgument("center has wrong dimension");
  if (const auto* p = std::get_if<ConvexPolygon>(&k)) return polar(*p, Vec2{z[0], z[1]});
  if (!is_origin(z)) {
    // still report a center outside the body as such
    double n2 = 0;
    for (double v : z) n2 += v * v;
    std::vector<double> u(z.begin(), z.end());
    for (auto& v : u) v /= std::sqrt(n2);
    if (std::sqrt(n2) >= support_function(k, u)) throw InvalidCenter("center is not interior");
    throw UnsupportedCombination("polar of a revolution body only about the origin");
  }
  if (const auto* b = std::get_if<Ball>(&k)) return Ball{b->dim, 1.0 / b->radius};
  return polar(std::get<RevolutionBody>(k));
}

SantaloResult santalo_point(const BodyRef& k, const SantaloOptions& opt) {
  const int n = dimension(k);
  if (const auto* b = std::get_if<Ball>(&k))
    return finish(volume(k), unit_ball_volume(n) / std::pow(b->radius, n), n, std::vector<double>(n, 0.0), 0.0);
  if (const auto* r = std::get_if<RevolutionBody>(&k))
    return finish(r->volume(), polar(*r).volume(), n, std::vector<double>(n, 0.0), 0.0);

  const auto& p = std::get<ConvexPolygon>(k);
  const double diam = p.diameter();
  if (p.is_o_symmetric()) {
    const auto pa = polar_area(p, {0, 0});
    return finish(p.area(), pa.area, 2, {0.0, 0.0}, norm(pa.centroid));
  }
  auto obj = [&](std::span<const double> x) { return polar_area(p, {x[0], x[1]}).area; };
  const Vec2 c = p.centroid();
  std::vector<Vec2> starts{c};
  const auto& v = p.vertices();
  for (int i = 0; i < 4; ++i) {
    const Vec2 vi = v[(i * v.size()) / 4];
    starts.push_back(c + 0.3 * (vi - c));
  }
  NelderMeadOptions nm;
  nm.x_tol = 1e-11 * diam;
  Vec2 best = c;
  double best_f = INFINITY;
  for (const auto& s : starts) {
    auto res = nelder_mead(obj, {s.x, s.y}, {0.05 * diam, 0.05 * diam}, nm);
    if (res.f < best_f) {
      best_f = res.f;
      best = {res.x[0], res.x[1]};
    }
  }
  // polish until the centroid certificate holds
  double step = 1e-3 * diam;
  for (int round = 0; round < opt.max_rounds; ++round) {
    const auto pa = polar_area(p, best);
    if (norm(pa.centroid) < opt.certificate_tol * diam)
      return finish(p.area(), pa.area, 2, {best.x, best.y}, norm(pa.centroid));
    auto res = nelder_mead(obj, {best.x, best.y}, {step, step}, nm);
    if (res.f <= best_f) {
      best_f = res.f;
      best = {res.x[0], res.x[1]};
    }
    step *= 0.1;
  }
  const auto pa = polar_area(p, best);
  if (norm(pa.centroid) < opt.certificate_tol * diam)
    return finish(p.area(), pa.area, 2, {best.x, best.y}, norm(pa.centroid));
  throw ConvergenceFailure("Santalo point search did not meet the centroid certificate", {best.x, best.y},
                           best_f);
}

SantaloResult bs_deficit(const BodyRef& k, const SantaloOptions& opt) { return santalo_point(k, opt); }

double bm_ratio_at_scale(const RevolutionBody& k, double a) {
  const auto& t = k.t();
  const auto& phi = k.phi();
  double rmax = 0, rmin = INFINITY;
  for (std::size_t i = 0; i < t.size(); ++i) rmax = std::max(rmax, std::hypot(a * t[i], phi[i]));
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    const Vec2 p{a * t[i], phi[i]}, q{a * t[i + 1], phi[i + 1]};
    rmin = std::min(rmin, std::abs(cross(p, q)) / norm(q - p));
  }
  if (phi.back() > 0) rmin = std::min(rmin, a * k.alpha());
  if (!(rmin > 0)) throw DegenerateInput("meridian does not contain the origin in its interior");
  return std::log(rmax / rmin);
}

double bm_distance_to_ball(const RevolutionBody& k) {
  const double s0 = std::log(k.max_profile() / k.alpha());
  auto f = [&](double s) { return bm_ratio_at_scale(k, std::exp(s)); };
  const auto r = scan_then_golden(f, s0 - 3.0, s0 + 3.0, 241, 1e-11);
  return std::max(0.0, r.f);
}

double cap_volume(int n, double h) {
  if (n < 2) throw InvalidArgument("cap volume needs n >= 2");
  if (h <= 0) return 0.0;
  if (h >= 2) return unit_ball_volume(n);
  const double k = 0.5 * (n - 1);
  const double base = unit_ball_volume(n - 1) * 0.5 * boost::math::beta(0.5, k + 1);
  if (h <= 1) return base * boost::math::ibeta(k + 1, 0.5, h * (2 - h));
  return unit_ball_volume(n) - base * boost::math::ibeta(k + 1, 0.5, (2 - h) * h);
}

double cap_height(int n, double eps) {
  if (!(eps >= 0)) throw InvalidArgument("cap volume must be nonnegative");
  if (eps >= 0.5 * unit_ball_volume(n)) throw BodyDegenerates("caps of this volume consume the ball");
  if (eps == 0) return 0.0;
  // relative width 1e-12 (hence absolute too, h < 1)
  double lo = 0, hi = 1;
  while (hi - lo > 1e-12 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (cap_volume(n, mid) < eps) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

RevolutionBody cap_cut_body(int n, double eps, std::size_t samples) {
  const double h = cap_height(n, eps);
  if (h == 0) return RevolutionBody::ball(n, 1.0, samples);
  return RevolutionBody::ball_slab(n, 1.0, h, samples);
}

}  // namespace stabgeo
