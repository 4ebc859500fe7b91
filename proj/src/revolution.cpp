#include "stabgeo/revolution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace stabgeo {

namespace {

// value of the piecewise-linear profile, clamping x into the support
double interp_inside(const std::vector<double>& t, const std::vector<double>& phi, double x) {
  if (x <= t.front()) return phi.front();
  if (x >= t.back()) return phi.back();
  const auto it = std::upper_bound(t.begin(), t.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - t.begin()) - 1;
  const double h = t[i + 1] - t[i];
  const double s = (x - t[i]) / h;
  return phi[i] + s * (phi[i + 1] - phi[i]);
}

std::vector<double> merged_breaks(const std::vector<double>& a, const std::vector<double>& b,
                                  double lo, double hi) {
  std::vector<double> x;
  x.reserve(a.size() + b.size());
  for (double v : a)
    if (v >= lo && v <= hi) x.push_back(v);
  for (double v : b)
    if (v >= lo && v <= hi) x.push_back(v);
  x.push_back(lo);
  x.push_back(hi);
  std::sort(x.begin(), x.end());
  const double eps = 1e-15 * std::max(std::abs(lo), std::abs(hi));
  std::vector<double> out;
  for (double v : x)
    if (out.empty() || v - out.back() > eps) out.push_back(v);
  return out;
}

}  // namespace

double power_segment_integral(double h, double p, double q, int k) {
  // sum_j p^j q^(k-j) / (k+1), stable for p ~ q
  double s = 0, pj = 1;
  std::vector<double> qp(k + 1);
  qp[0] = 1;
  for (int j = 1; j <= k; ++j) qp[j] = qp[j - 1] * q;
  for (int j = 0; j <= k; ++j) {
    s += pj * qp[k - j];
    pj *= p;
  }
  return h * s / (k + 1);
}

RevolutionBody::RevolutionBody(int dim, std::vector<double> t, std::vector<double> phi, double tol)
    : dim_(dim), t_(std::move(t)), phi_(std::move(phi)) {
  if (dim_ < 2) throw InvalidArgument("revolution body needs dim >= 2");
  const std::size_t n = t_.size();
  if (n < 2 || phi_.size() != n) throw InvalidArgument("profile needs >= 2 matching samples");
  double scale = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(t_[i]) || !std::isfinite(phi_[i])) throw InvalidArgument("profile not finite");
    if (phi_[i] < 0) throw InvalidArgument("profile must be nonnegative");
    if (i > 0 && !(t_[i] > t_[i - 1])) throw InvalidArgument("profile t must be strictly increasing");
    scale = std::max({scale, std::abs(t_[i]), phi_[i]});
  }
  if (!(t_.back() > 0)) throw DegenerateInput("profile has zero axial extent");
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(t_[i] + t_[n - 1 - i]) > tol * scale ||
        std::abs(phi_[i] - phi_[n - 1 - i]) > tol * scale)
      throw InvalidArgument("profile is not even");
  }
  double pmax = 0;
  for (double p : phi_) pmax = std::max(pmax, p);
  if (!(pmax > 0)) throw DegenerateInput("meridian has empty interior");
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (!(phi_[i] > 0)) throw DegenerateInput("profile vanishes in the interior");
    const Vec2 a{t_[i] - t_[i - 1], phi_[i] - phi_[i - 1]};
    const Vec2 b{t_[i + 1] - t_[i], phi_[i + 1] - phi_[i]};
    if (cross(a, b) > tol * scale * scale) throw InvalidArgument("profile is not concave");
  }
  compute_volume();
}

RevolutionBody::RevolutionBody(int dim, std::vector<double> t, std::vector<double> phi, Trusted)
    : dim_(dim), t_(std::move(t)), phi_(std::move(phi)) {
  compute_volume();
}

void RevolutionBody::compute_volume() {
  double s = 0;
  for (std::size_t i = 0; i + 1 < t_.size(); ++i)
    s += power_segment_integral(t_[i + 1] - t_[i], phi_[i], phi_[i + 1], dim_ - 1);
  volume_ = unit_ball_volume(dim_ - 1) * s;
}

RevolutionBody RevolutionBody::from_chain(int dim, const std::vector<Vec2>& chain) {
  std::vector<Vec2> h = upper_hull(chain);
  if (h.size() < 2) throw DegenerateInput("meridian chain has fewer than 2 vertices");
  double scale = 0;
  for (const auto& p : h) scale = std::max({scale, std::abs(p.x), std::abs(p.y)});
  const double tiny = 1e-12 * scale;
  std::vector<Vec2> left;
  bool center = false;
  double center_y = 0;
  for (const auto& p : h) {
    if (p.x < -tiny) left.push_back({p.x, std::max(p.y, 0.0)});
    else if (std::abs(p.x) <= tiny) {
      center = true;
      center_y = p.y;
    }
  }
  if (left.empty()) throw DegenerateInput("meridian chain has no left half");
  std::vector<double> t, phi;
  for (const auto& p : left) {
    t.push_back(p.x);
    phi.push_back(p.y);
  }
  if (center) {
    t.push_back(0.0);
    phi.push_back(center_y);
  }
  for (std::size_t i = left.size(); i-- > 0;) {
    t.push_back(-left[i].x);
    phi.push_back(left[i].y);
  }
  return RevolutionBody(dim, std::move(t), std::move(phi), 1e-7);
}

RevolutionBody RevolutionBody::from_function(int dim, double alpha,
                                             const std::function<double(double)>& f,
                                             std::size_t samples) {
  if (!(alpha > 0) || samples < 3) throw InvalidArgument("from_function needs alpha>0, samples>=3");
  std::vector<Vec2> pts(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    const double t = -alpha + 2.0 * alpha * static_cast<double>(i) / (samples - 1);
    pts[i] = {t, f(t)};
  }
  for (std::size_t i = 0; i < samples; ++i) {
    const double y = 0.5 * (pts[i].y + pts[samples - 1 - i].y);
    if (!std::isfinite(y)) throw InvalidArgument("profile function not finite");
    if (i > 0 && i + 1 < samples && !(y > 0)) throw DegenerateInput("profile vanishes in the interior");
    pts[i] = {0.5 * (pts[i].x - pts[samples - 1 - i].x), std::max(y, 0.0)};
  }
  return from_chain(dim, pts);
}

RevolutionBody RevolutionBody::ball(int dim, double radius, std::size_t samples) {
  return ball_slab(dim, radius, 0.0, samples);
}

RevolutionBody RevolutionBody::ball_slab(int dim, double r, double h, std::size_t samples) {
  if (!(r > 0) || samples < 3) throw InvalidArgument("ball needs radius>0, samples>=3");
  if (!(h >= 0) || !(h < r)) throw BodyDegenerates("cap height must lie in [0, r)");
  // 1 - cos(theta_c) = h / r, computed without cancellation
  const double th0 = 2.0 * std::asin(std::sqrt(0.5 * h / r));
  const double span = std::numbers::pi - 2.0 * th0;
  std::vector<double> t(samples), phi(samples);
  const std::size_t half = (samples - 1) / 2;
  for (std::size_t k = 0; k <= half; ++k) {
    const double th = th0 + span * static_cast<double>(k) / (samples - 1);
    t[k] = -r * std::cos(th);
    phi[k] = r * std::sin(th);
    t[samples - 1 - k] = -t[k];
    phi[samples - 1 - k] = phi[k];
  }
  if (samples % 2 == 1) {
    t[half] = 0;
    phi[half] = r;
  }
  if (h == 0) phi.front() = phi.back() = 0;
  return RevolutionBody(dim, std::move(t), std::move(phi));
}

RevolutionBody RevolutionBody::cylinder(int dim, double half_length, double radius) {
  if (!(half_length > 0) || !(radius > 0)) throw DegenerateInput("cylinder needs positive sizes");
  return RevolutionBody(dim, {-half_length, half_length}, {radius, radius});
}

std::vector<Vec2> RevolutionBody::chain() const {
  std::vector<Vec2> c(t_.size());
  for (std::size_t i = 0; i < t_.size(); ++i) c[i] = {t_[i], phi_[i]};
  return c;
}

ConvexPolygon RevolutionBody::meridian() const {
  std::vector<Vec2> ring;
  const std::size_t n = t_.size();
  for (std::size_t i = 0; i < n; ++i) ring.push_back({t_[i], -phi_[i]});
  for (std::size_t i = n; i-- > 0;) {
    if ((i == 0 || i == n - 1) && phi_[i] == 0) continue;
    ring.push_back({t_[i], phi_[i]});
  }
  return ConvexPolygon(simplify_ring(ring), 1e-9);
}

double RevolutionBody::profile(double t) const {
  if (t < t_.front() || t > t_.back()) return 0.0;
  return interp_inside(t_, phi_, t);
}

double RevolutionBody::max_profile() const { return *std::max_element(phi_.begin(), phi_.end()); }

double RevolutionBody::meridian_support(double wa, double wp) const {
  double s = -INFINITY;
  wp = std::abs(wp);
  for (std::size_t i = 0; i < t_.size(); ++i) s = std::max(s, wa * t_[i] + wp * phi_[i]);
  return s;
}

double RevolutionBody::support(std::span<const double> w) const {
  if (static_cast<int>(w.size()) != dim_) throw InvalidArgument("direction has wrong dimension");
  double perp = 0;
  for (std::size_t i = 1; i < w.size(); ++i) perp += w[i] * w[i];
  if (w[0] == 0 && perp == 0) throw InvalidArgument("zero direction");
  return meridian_support(w[0], std::sqrt(perp));
}

double RevolutionBody::diameter() const {
  double r = 0;
  for (std::size_t i = 0; i < t_.size(); ++i) r = std::max(r, std::hypot(t_[i], phi_[i]));
  return 2 * r;
}

RevolutionBody RevolutionBody::scaled(double s) const { return axis_scaled(s, s); }

RevolutionBody RevolutionBody::axis_scaled(double a, double c) const {
  if (!(a > 0) || !(c > 0)) throw InvalidArgument("scale factors must be positive");
  std::vector<double> t = t_, phi = phi_;
  for (auto& v : t) v *= a;
  for (auto& v : phi) v *= c;
  return RevolutionBody(dim_, std::move(t), std::move(phi), Trusted{});
}

std::vector<Vec2> upper_hull(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end(),
            [](Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y > b.y); });
  // keep the top point per abscissa
  std::vector<Vec2> u;
  for (const auto& p : pts)
    if (u.empty() || p.x != u.back().x) u.push_back(p);
  std::vector<Vec2> h;
  for (const auto& p : u) {
    while (h.size() >= 2 && cross(h[h.size() - 1] - h[h.size() - 2], p - h[h.size() - 2]) >= 0)
      h.pop_back();
    h.push_back(p);
  }
  return h;
}

std::vector<Vec2> minkowski_chain(const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
  std::vector<Vec2> out;
  out.reserve(a.size() + b.size());
  Vec2 cur = a.front() + b.front();
  out.push_back(cur);
  std::size_t i = 0, j = 0;
  while (i + 1 < a.size() || j + 1 < b.size()) {
    double c;
    Vec2 ea{}, eb{};
    if (i + 1 < a.size()) ea = a[i + 1] - a[i];
    if (j + 1 < b.size()) eb = b[j + 1] - b[j];
    if (i + 1 == a.size()) c = -1;
    else if (j + 1 == b.size()) c = 1;
    else c = -cross(ea, eb);  // steeper slope first
    if (c >= 0) {
      cur = cur + ea;
      ++i;
    }
    if (c <= 0) {
      cur = cur + eb;
      ++j;
    }
    out.push_back(cur);
  }
  // exact endpoint
  out.back() = a.back() + b.back();
  return out;
}

std::vector<Vec2> polar_chain(const std::vector<Vec2>& c) {
  std::vector<Vec2> out;
  if (c.front().y > 0) out.push_back({1.0 / c.front().x, 0.0});
  for (std::size_t i = 0; i + 1 < c.size(); ++i) {
    const Vec2 p = c[i], q = c[i + 1];
    const Vec2 nrm{-(q.y - p.y), q.x - p.x};
    const double off = dot(nrm, p);
    if (!(off > 0)) throw InvalidCenter("origin is not interior to the meridian");
    out.push_back({nrm.x / off, nrm.y / off});
  }
  if (c.back().y > 0) out.push_back({1.0 / c.back().x, 0.0});
  return out;
}

RevolutionBody minkowski_midpoint(const RevolutionBody& a, const RevolutionBody& b) {
  if (a.dim() != b.dim()) throw InvalidArgument("dimension mismatch");
  auto s = minkowski_chain(a.chain(), b.chain());
  for (auto& p : s) p = 0.5 * p;
  return RevolutionBody::from_chain(a.dim(), s);
}

RevolutionBody polar(const RevolutionBody& k) {
  return RevolutionBody::from_chain(k.dim(), polar_chain(k.chain()));
}

double symmetric_difference_volume(const RevolutionBody& a, const RevolutionBody& b) {
  if (a.dim() != b.dim()) throw InvalidArgument("dimension mismatch");
  const double hi = std::max(a.alpha(), b.alpha());
  const auto x = merged_breaks(a.t(), b.t(), -hi, hi);
  const int k = a.dim() - 1;
  auto val = [](const RevolutionBody& body, double x0, double x1, double x) {
    const double mid = 0.5 * (x0 + x1);
    if (mid < -body.alpha() || mid > body.alpha()) return 0.0;
    return interp_inside(body.t(), body.phi(), x);
  };
  double s = 0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double x0 = x[i], x1 = x[i + 1];
    const double a0 = val(a, x0, x1, x0), a1 = val(a, x0, x1, x1);
    const double b0 = val(b, x0, x1, x0), b1 = val(b, x0, x1, x1);
    const double d0 = a0 - b0, d1 = a1 - b1;
    if ((d0 > 0 && d1 < 0) || (d0 < 0 && d1 > 0)) {
      const double lam = d0 / (d0 - d1);
      const double am = a0 + lam * (a1 - a0), bm = b0 + lam * (b1 - b0);
      const double h0 = lam * (x1 - x0), h1 = (1 - lam) * (x1 - x0);
      s += std::abs(power_segment_integral(h0, a0, am, k) - power_segment_integral(h0, b0, bm, k));
      s += std::abs(power_segment_integral(h1, am, a1, k) - power_segment_integral(h1, bm, b1, k));
    } else {
      s += std::abs(power_segment_integral(x1 - x0, a0, a1, k) -
                    power_segment_integral(x1 - x0, b0, b1, k));
    }
  }
  return unit_ball_volume(k) * s;
}

double containment_excess(const RevolutionBody& outer, const RevolutionBody& inner) {
  double ex = inner.alpha() - outer.alpha();
  const double lim = inner.alpha();
  for (const auto* src : {&inner.t(), &outer.t()}) {
    for (double x : *src) {
      if (x < -lim || x > lim) continue;
      const double po = (std::abs(x) <= outer.alpha()) ? interp_inside(outer.t(), outer.phi(), x) : 0.0;
      ex = std::max(ex, interp_inside(inner.t(), inner.phi(), x) - po);
    }
  }
  return ex;
}

bool contains(const RevolutionBody& outer, const RevolutionBody& inner, double tol) {
  const double scale = std::max(outer.diameter(), inner.diameter());
  return containment_excess(outer, inner) <= tol * scale;
}

RevolutionBody intersection(const RevolutionBody& a, const RevolutionBody& b) {
  const double m = std::min(a.alpha(), b.alpha());
  const auto x = merged_breaks(a.t(), b.t(), -m, m);
  std::vector<Vec2> pts;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double pa = interp_inside(a.t(), a.phi(), x[i]);
    const double pb = interp_inside(b.t(), b.phi(), x[i]);
    pts.push_back({x[i], std::min(pa, pb)});
    if (i + 1 < x.size()) {
      const double qa = interp_inside(a.t(), a.phi(), x[i + 1]);
      const double qb = interp_inside(b.t(), b.phi(), x[i + 1]);
      const double d0 = pa - pb, d1 = qa - qb;
      if ((d0 > 0 && d1 < 0) || (d0 < 0 && d1 > 0)) {
        const double lam = d0 / (d0 - d1);
        pts.push_back({x[i] + lam * (x[i + 1] - x[i]), pa + lam * (qa - pa)});
      }
    }
  }
  return RevolutionBody::from_chain(a.dim(), pts);
}

RevolutionBody convex_hull_union(std::span<const RevolutionBody> bodies) {
  if (bodies.empty()) throw InvalidArgument("hull of no bodies");
  std::vector<Vec2> pts;
  for (const auto& b : bodies) {
    if (b.dim() != bodies[0].dim()) throw InvalidArgument("dimension mismatch");
    for (std::size_t i = 0; i < b.size(); ++i) pts.push_back({b.t()[i], b.phi()[i]});
  }
  return RevolutionBody::from_chain(bodies[0].dim(), pts);
}

double hausdorff_distance(const RevolutionBody& a, const RevolutionBody& b) {
  return hausdorff_distance(a.meridian(), b.meridian());
}

}  // namespace stabgeo
