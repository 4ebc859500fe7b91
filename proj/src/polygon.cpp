#include "stabgeo/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace stabgeo {

namespace {

double ring_scale(const std::vector<Vec2>& v) {
  double s = 0.0;
  for (const auto& p : v) s = std::max({s, std::abs(p.x), std::abs(p.y)});
  return s;
}

double signed_area(const std::vector<Vec2>& v) {
  double a = 0.0;
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) a += cross(v[i], v[(i + 1) % n]);
  return 0.5 * a;
}

}  // namespace

std::vector<Vec2> simplify_ring(const std::vector<Vec2>& ring, double rel_tol) {
  std::vector<Vec2> v;
  const double scale = std::max(ring_scale(ring), 1e-300);
  const double dup = rel_tol * scale;
  for (const auto& p : ring) {
    if (!v.empty() && norm(p - v.back()) <= dup) continue;
    v.push_back(p);
  }
  while (v.size() > 1 && norm(v.front() - v.back()) <= dup) v.pop_back();
  // collinear removal; repeat until stable since removals expose new triples
  bool changed = true;
  while (changed && v.size() >= 3) {
    changed = false;
    std::vector<Vec2> out;
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2 a = v[(i + n - 1) % n], b = v[i], c = v[(i + 1) % n];
      const double cr = cross(b - a, c - b);
      if (std::abs(cr) <= rel_tol * norm(b - a) * norm(c - b) + dup * dup) {
        changed = true;
        continue;
      }
      out.push_back(b);
    }
    if (changed) v.swap(out);
  }
  return v;
}

ConvexPolygon::ConvexPolygon(std::vector<Vec2> ccw, double tol) : v_(std::move(ccw)) {
  if (v_.size() < 3) throw DegenerateInput("polygon needs at least 3 vertices");
  const std::size_t n = v_.size();
  const double scale = ring_scale(v_);
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(v_[i].x) || !std::isfinite(v_[i].y))
      throw InvalidArgument("polygon vertex is not finite");
    if (norm(v_[i] - v_[(i + 1) % n]) <= tol * scale)
      throw InvalidArgument("polygon has duplicate adjacent vertices");
  }
  const double a = signed_area(v_);
  if (!(std::abs(a) > tol * scale * scale)) throw DegenerateInput("polygon has zero area");
  if (a < 0) throw InvalidArgument("polygon vertices must be counterclockwise");
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 e1 = v_[(i + 1) % n] - v_[i];
    const Vec2 e2 = v_[(i + 2) % n] - v_[(i + 1) % n];
    if (cross(e1, e2) < -tol * norm(e1) * norm(e2))
      throw InvalidArgument("polygon is not convex");
  }
}

ConvexPolygon ConvexPolygon::hull(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end(),
            [](Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }),
            pts.end());
  if (pts.size() < 3) throw DegenerateInput("hull of fewer than 3 distinct points");
  // Andrew's monotone chain
  std::vector<Vec2> h(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 0) --k;
    h[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return ConvexPolygon(simplify_ring(h));
}

ConvexPolygon ConvexPolygon::regular(int k, double radius, double phase) {
  if (k < 3 || !(radius > 0)) throw InvalidArgument("regular polygon needs k>=3, radius>0");
  std::vector<Vec2> v(k);
  for (int i = 0; i < k; ++i) {
    const double th = phase + 2.0 * std::numbers::pi * i / k;
    v[i] = {radius * std::cos(th), radius * std::sin(th)};
  }
  return ConvexPolygon(std::move(v));
}

ConvexPolygon ConvexPolygon::box(double x0, double y0, double x1, double y1) {
  return ConvexPolygon({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}});
}

double ConvexPolygon::area() const { return signed_area(v_); }

Vec2 ConvexPolygon::centroid() const {
  // shift to a vertex for conditioning
  const Vec2 o = v_[0];
  double a = 0, cx = 0, cy = 0;
  const std::size_t n = v_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 p = v_[i] - o, q = v_[(i + 1) % n] - o;
    const double c = cross(p, q);
    a += c;
    cx += (p.x + q.x) * c;
    cy += (p.y + q.y) * c;
  }
  return {o.x + cx / (3.0 * a), o.y + cy / (3.0 * a)};
}

double ConvexPolygon::support(Vec2 w) const {
  double s = -INFINITY;
  for (const auto& p : v_) s = std::max(s, dot(p, w));
  return s;
}

double ConvexPolygon::diameter() const {
  double d = 0;
  for (std::size_t i = 0; i < v_.size(); ++i)
    for (std::size_t j = i + 1; j < v_.size(); ++j) d = std::max(d, norm(v_[i] - v_[j]));
  return d;
}

bool ConvexPolygon::contains(Vec2 p, double tol) const {
  const std::size_t n = v_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 e = v_[(i + 1) % n] - v_[i];
    if (cross(e, p - v_[i]) < -tol * norm(e)) return false;
  }
  return true;
}

bool ConvexPolygon::interior(Vec2 p, double margin) const {
  const std::size_t n = v_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 e = v_[(i + 1) % n] - v_[i];
    if (!(cross(e, p - v_[i]) > margin * norm(e))) return false;
  }
  return true;
}

bool ConvexPolygon::is_o_symmetric(double tol) const {
  const double t = tol * std::max(ring_scale(v_), 1.0);
  for (const auto& p : v_) {
    bool found = false;
    for (const auto& q : v_)
      if (norm(p + q) <= t) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

ConvexPolygon ConvexPolygon::translated(Vec2 d) const {
  std::vector<Vec2> v = v_;
  for (auto& p : v) p = p + d;
  return ConvexPolygon(std::move(v), Trusted{});
}

ConvexPolygon ConvexPolygon::scaled(double s) const {
  if (!(s > 0)) throw InvalidArgument("scale factor must be positive");
  std::vector<Vec2> v = v_;
  for (auto& p : v) p = s * p;
  return ConvexPolygon(std::move(v), Trusted{});
}

ConvexPolygon ConvexPolygon::diag_scaled(double a, double b) const {
  if (!(a > 0) || !(b > 0)) throw InvalidArgument("scale factors must be positive");
  std::vector<Vec2> v = v_;
  for (auto& p : v) p = {a * p.x, b * p.y};
  return ConvexPolygon(std::move(v), Trusted{});
}

ConvexPolygon minkowski_sum(const ConvexPolygon& a, const ConvexPolygon& b) {
  auto lowest = [](const std::vector<Vec2>& v) {
    std::size_t k = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
      if (v[i].y < v[k].y || (v[i].y == v[k].y && v[i].x < v[k].x)) k = i;
    return k;
  };
  const auto& va = a.vertices();
  const auto& vb = b.vertices();
  const std::size_t na = va.size(), nb = vb.size();
  std::size_t i = lowest(va), j = lowest(vb);
  std::vector<Vec2> out;
  out.reserve(na + nb);
  std::size_t ci = 0, cj = 0;
  Vec2 cur = va[i] + vb[j];
  while (ci < na || cj < nb) {
    out.push_back(cur);
    const Vec2 ea = va[(i + 1) % na] - va[i];
    const Vec2 eb = vb[(j + 1) % nb] - vb[j];
    double c;
    if (ci == na) c = -1;
    else if (cj == nb) c = 1;
    else c = cross(ea, eb);
    // parallel edges (c == 0) are summed in one step
    if (c >= 0) {
      cur = cur + ea;
      i = (i + 1) % na;
      ++ci;
    }
    if (c <= 0) {
      cur = cur + eb;
      j = (j + 1) % nb;
      ++cj;
    }
  }
  return ConvexPolygon(simplify_ring(out), ConvexPolygon::Trusted{});
}

std::optional<ConvexPolygon> intersect(const ConvexPolygon& a, const ConvexPolygon& b) {
  std::vector<Vec2> poly = a.vertices();
  const auto& clip = b.vertices();
  const std::size_t m = clip.size();
  for (std::size_t k = 0; k < m && !poly.empty(); ++k) {
    const Vec2 p0 = clip[k], p1 = clip[(k + 1) % m];
    const Vec2 e = p1 - p0;
    auto side = [&](Vec2 q) { return cross(e, q - p0); };
    std::vector<Vec2> next;
    next.reserve(poly.size() + 1);
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2 s = poly[i], t = poly[(i + 1) % n];
      const double ss = side(s), st = side(t);
      if (ss >= 0) next.push_back(s);
      if ((ss >= 0) != (st >= 0)) {
        const double lam = ss / (ss - st);
        next.push_back(s + lam * (t - s));
      }
    }
    poly.swap(next);
  }
  if (poly.size() < 3) return std::nullopt;
  poly = simplify_ring(poly, 1e-13);
  if (poly.size() < 3 || !(signed_area(poly) > 1e-15 * std::max(a.area(), b.area())))
    return std::nullopt;
  try {
    return ConvexPolygon(std::move(poly), 1e-9);
  } catch (const Error&) {
    return std::nullopt;
  }
}

double intersection_area(const ConvexPolygon& a, const ConvexPolygon& b) {
  auto r = intersect(a, b);
  return r ? r->area() : 0.0;
}

double hausdorff_distance(const ConvexPolygon& a, const ConvexPolygon& b) {
  // candidate directions: edge normals of both polygons, plus for every arc of the
  // merged normal fan the direction of (argmax_a - argmax_b) when it lies in the arc
  std::vector<double> angles;
  auto add_normals = [&](const std::vector<Vec2>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      const Vec2 e = v[(i + 1) % v.size()] - v[i];
      angles.push_back(std::atan2(-e.x, e.y));
    }
  };
  add_normals(a.vertices());
  add_normals(b.vertices());
  std::sort(angles.begin(), angles.end());
  auto dir = [](double th) { return Vec2{std::cos(th), std::sin(th)}; };
  auto argmax = [](const std::vector<Vec2>& v, Vec2 w) {
    std::size_t k = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
      if (dot(v[i], w) > dot(v[k], w)) k = i;
    return v[k];
  };
  double best = 0;
  auto eval = [&](Vec2 w) { best = std::max(best, std::abs(a.support(w) - b.support(w))); };
  const std::size_t n = angles.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double lo = angles[i];
    const double hi = (i + 1 < n) ? angles[i + 1] : angles[0] + 2 * std::numbers::pi;
    eval(dir(lo));
    if (hi - lo < 1e-15) continue;
    const Vec2 mid = dir(0.5 * (lo + hi));
    const Vec2 d = argmax(a.vertices(), mid) - argmax(b.vertices(), mid);
    if (norm(d) == 0) continue;
    for (Vec2 c : {d, -d}) {
      double th = std::atan2(c.y, c.x);
      while (th < lo) th += 2 * std::numbers::pi;
      if (th <= hi) eval(dir(th));
    }
  }
  return best;
}

}  // namespace stabgeo
