#include "stabgeo/body.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <map>
#include <mutex>
#include <numbers>

#include "stabgeo/kernels.hpp"

namespace stabgeo {

double unit_ball_volume(int n) {
  static std::mutex mu;
  static std::map<int, double> cache;
  if (n < 0) throw InvalidArgument("negative dimension");
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  const double v = std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
  cache.emplace(n, v);
  return v;
}

namespace {
WarningHandler& warning_handler() {
  static WarningHandler h = [](const std::string& m) { std::cerr << "warning: " << m << "\n"; };
  return h;
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

ConvexPolygon disk_polygon(double r) { return ConvexPolygon::regular(4096, r); }

// promote a Ball so both operands share a representation
std::pair<BodyRef, BodyRef> harmonize(const BodyRef& k, const BodyRef& c) {
  if (dimension(k) != dimension(c)) throw InvalidArgument("dimension mismatch");
  auto promote = [](const BodyRef& ball, const BodyRef& other) -> BodyRef {
    const Ball& b = std::get<Ball>(ball);
    if (std::holds_alternative<RevolutionBody>(other)) {
      const auto& o = std::get<RevolutionBody>(other);
      return RevolutionBody::ball(b.dim, b.radius, std::max<std::size_t>(o.size(), 4097));
    }
    return disk_polygon(b.radius);
  };
  const bool kb = std::holds_alternative<Ball>(k), cb = std::holds_alternative<Ball>(c);
  if (kb && !cb) return {promote(k, c), c};
  if (cb && !kb) return {k, promote(c, k)};
  if (k.index() != c.index())
    throw UnsupportedCombination("mixed revolution body / polygon operands");
  return {k, c};
}

struct BallCtx {
  int d;
  double r2;
};
bool inside_ball(const void* ctx, const double* x) {
  const auto* b = static_cast<const BallCtx*>(ctx);
  double s = 0;
  for (int i = 0; i < b->d; ++i) s += x[i] * x[i];
  return s <= b->r2;
}
bool inside_rev(const void* ctx, const double* x) {
  const auto* b = static_cast<const RevolutionBody*>(ctx);
  double s = 0;
  for (int i = 1; i < b->dim(); ++i) s += x[i] * x[i];
  const double p = b->profile(x[0]);
  return s <= p * p;
}
bool inside_poly(const void* ctx, const double* x) {
  return static_cast<const ConvexPolygon*>(ctx)->contains({x[0], x[1]});
}

struct Oracle {
  kernels::Box box;
  kernels::InsideFn fn;
  const void* ctx;
  BallCtx ball;  // storage when the body is a ball
};

void make_oracle(const BodyRef& k, Oracle& o) {
  std::visit(overloaded{
                 [&](const Ball& b) {
                   o.ball = {b.dim, b.radius * b.radius};
                   o.box.lo.assign(b.dim, -b.radius);
                   o.box.hi.assign(b.dim, b.radius);
                   o.fn = inside_ball;
                   o.ctx = &o.ball;
                 },
                 [&](const RevolutionBody& r) {
                   const double p = r.max_profile();
                   o.box.lo.assign(r.dim(), -p);
                   o.box.hi.assign(r.dim(), p);
                   o.box.lo[0] = -r.alpha();
                   o.box.hi[0] = r.alpha();
                   o.fn = inside_rev;
                   o.ctx = &r;
                 },
                 [&](const ConvexPolygon& p) {
                   double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
                   for (auto v : p.vertices()) {
                     x0 = std::min(x0, v.x);
                     x1 = std::max(x1, v.x);
                     y0 = std::min(y0, v.y);
                     y1 = std::max(y1, v.y);
                   }
                   o.box.lo = {x0, y0};
                   o.box.hi = {x1, y1};
                   o.fn = inside_poly;
                   o.ctx = &p;
                 },
             },
             k);
}

double box_volume(const kernels::Box& b) {
  double v = 1;
  for (std::size_t i = 0; i < b.lo.size(); ++i) v *= b.hi[i] - b.lo[i];
  return v;
}

McEstimate estimate(std::uint64_t hits, std::uint64_t n, double boxvol) {
  const double p = static_cast<double>(hits) / static_cast<double>(n);
  return {boxvol * p, boxvol * std::sqrt(p * (1 - p) / static_cast<double>(n))};
}

}  // namespace

void set_warning_handler(WarningHandler h) { warning_handler() = std::move(h); }
void warn(const std::string& msg) {
  if (warning_handler()) warning_handler()(msg);
}

Ball make_ball(int dim, double radius) {
  if (dim < 1) throw InvalidArgument("ball dimension must be >= 1");
  if (!(radius > 0)) throw DegenerateInput("ball radius must be positive");
  return {dim, radius};
}

int dimension(const BodyRef& k) {
  return std::visit(overloaded{[](const Ball& b) { return b.dim; },
                               [](const RevolutionBody& r) { return r.dim(); },
                               [](const ConvexPolygon&) { return 2; }},
                    k);
}

double volume(const BodyRef& k) {
  return std::visit(
      overloaded{[](const Ball& b) { return unit_ball_volume(b.dim) * std::pow(b.radius, b.dim); },
                 [](const RevolutionBody& r) { return r.volume(); },
                 [](const ConvexPolygon& p) { return p.area(); }},
      k);
}

double support_function(const BodyRef& k, std::span<const double> w) {
  double n2 = 0;
  for (double v : w) n2 += v * v;
  if (n2 == 0) throw InvalidArgument("zero direction");
  if (static_cast<int>(w.size()) != dimension(k)) throw InvalidArgument("direction has wrong dimension");
  return std::visit(overloaded{[&](const Ball& b) { return b.radius * std::sqrt(n2); },
                               [&](const RevolutionBody& r) { return r.support(w); },
                               [&](const ConvexPolygon& p) { return p.support({w[0], w[1]}); }},
                    k);
}

double diameter(const BodyRef& k) {
  return std::visit(overloaded{[](const Ball& b) { return 2 * b.radius; },
                               [](const RevolutionBody& r) { return r.diameter(); },
                               [](const ConvexPolygon& p) { return p.diameter(); }},
                    k);
}

BodyRef scaled(const BodyRef& k, double s) {
  if (!(s > 0)) throw InvalidArgument("scale factor must be positive");
  return std::visit(overloaded{[&](const Ball& b) -> BodyRef { return Ball{b.dim, b.radius * s}; },
                               [&](const RevolutionBody& r) -> BodyRef { return r.scaled(s); },
                               [&](const ConvexPolygon& p) -> BodyRef { return p.scaled(s); }},
                    k);
}

bool is_o_symmetric(const BodyRef& k) {
  if (const auto* p = std::get_if<ConvexPolygon>(&k)) return p->is_o_symmetric();
  return true;
}

BodyRef minkowski_midpoint(const BodyRef& k, const BodyRef& c) {
  if (const auto* a = std::get_if<Ball>(&k))
    if (const auto* b = std::get_if<Ball>(&c)) {
      if (a->dim != b->dim) throw InvalidArgument("dimension mismatch");
      return Ball{a->dim, 0.5 * (a->radius + b->radius)};
    }
  auto [x, y] = harmonize(k, c);
  if (const auto* a = std::get_if<RevolutionBody>(&x))
    return minkowski_midpoint(*a, std::get<RevolutionBody>(y));
  return minkowski_sum(std::get<ConvexPolygon>(x), std::get<ConvexPolygon>(y)).scaled(0.5);
}

double symmetric_difference_volume(const BodyRef& k, const BodyRef& c) {
  if (const auto* a = std::get_if<Ball>(&k))
    if (const auto* b = std::get_if<Ball>(&c)) {
      if (a->dim != b->dim) throw InvalidArgument("dimension mismatch");
      return unit_ball_volume(a->dim) *
             std::abs(std::pow(a->radius, a->dim) - std::pow(b->radius, b->dim));
    }
  auto [x, y] = harmonize(k, c);
  if (const auto* a = std::get_if<RevolutionBody>(&x))
    return symmetric_difference_volume(*a, std::get<RevolutionBody>(y));
  const auto& p = std::get<ConvexPolygon>(x);
  const auto& q = std::get<ConvexPolygon>(y);
  return std::max(0.0, p.area() + q.area() - 2 * intersection_area(p, q));
}

double hausdorff_distance(const BodyRef& k, const BodyRef& c) {
  if (const auto* a = std::get_if<Ball>(&k))
    if (const auto* b = std::get_if<Ball>(&c)) return std::abs(a->radius - b->radius);
  auto [x, y] = harmonize(k, c);
  if (const auto* a = std::get_if<RevolutionBody>(&x))
    return hausdorff_distance(*a, std::get<RevolutionBody>(y));
  return hausdorff_distance(std::get<ConvexPolygon>(x), std::get<ConvexPolygon>(y));
}

McEstimate mc_volume(const BodyRef& k, std::uint64_t samples, std::uint64_t seed, Exec exec) {
  if (samples < 1000) throw InvalidArgument("mc_volume needs at least 1000 samples");
  Oracle o;
  make_oracle(k, o);
  const auto hits = exec == Exec::parallel ? kernels::mc_hits_parallel(o.box, o.fn, o.ctx, samples, seed)
                                           : kernels::mc_hits_serial(o.box, o.fn, o.ctx, samples, seed);
  return estimate(hits, samples, box_volume(o.box));
}

McEstimate mc_symmetric_difference(const BodyRef& k, const BodyRef& c, std::uint64_t samples,
                                   std::uint64_t seed, Exec exec) {
  if (samples < 1000) throw InvalidArgument("needs at least 1000 samples");
  if (dimension(k) != dimension(c)) throw InvalidArgument("dimension mismatch");
  struct Pair {
    Oracle a, b;
  } pr;
  make_oracle(k, pr.a);
  make_oracle(c, pr.b);
  kernels::Box box = pr.a.box;
  for (std::size_t i = 0; i < box.lo.size(); ++i) {
    box.lo[i] = std::min(box.lo[i], pr.b.box.lo[i]);
    box.hi[i] = std::max(box.hi[i], pr.b.box.hi[i]);
  }
  // oracle ctx may point into pr (ball storage); pr lives for the whole call
  if (pr.a.fn == inside_ball) pr.a.ctx = &pr.a.ball;
  if (pr.b.fn == inside_ball) pr.b.ctx = &pr.b.ball;
  auto xor_fn = [](const void* ctx, const double* x) {
    const auto* p = static_cast<const Pair*>(ctx);
    return p->a.fn(p->a.ctx, x) != p->b.fn(p->b.ctx, x);
  };
  const auto hits = exec == Exec::parallel ? kernels::mc_hits_parallel(box, xor_fn, &pr, samples, seed)
                                           : kernels::mc_hits_serial(box, xor_fn, &pr, samples, seed);
  return estimate(hits, samples, box_volume(box));
}

bool support_contains(const BodyRef& outer, const BodyRef& inner, int directions, double tol) {
  const int n = dimension(outer);
  if (n != dimension(inner)) throw InvalidArgument("dimension mismatch");
  const double scale = std::max(diameter(outer), diameter(inner));
  std::vector<double> w(n, 0.0);
  for (int k = 0; k < directions; ++k) {
    const double th = 2 * std::numbers::pi * k / directions;
    w[0] = std::cos(th);
    w[1] = std::sin(th);
    if (support_function(inner, w) > support_function(outer, w) + tol * scale) return false;
  }
  return true;
}

RevolutionBody as_revolution(const BodyRef& k, std::size_t samples) {
  if (const auto* r = std::get_if<RevolutionBody>(&k)) return *r;
  if (const auto* b = std::get_if<Ball>(&k)) return RevolutionBody::ball(b->dim, b->radius, samples);
  throw UnsupportedCombination("polygon is not a revolution body");
}

}  // namespace stabgeo
