#pragma once
// random families and brute-force oracles shared by the test binaries

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "stabgeo/body.hpp"
#include "stabgeo/experiments.hpp"
#include "stabgeo/pl1d.hpp"
#include "stabgeo/pln.hpp"

namespace testkit {

using namespace stabgeo;

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline ConvexPolygon random_symmetric_polygon(std::mt19937_64& rng, int min_k = 2, int max_k = 7) {
  const int k = std::uniform_int_distribution<int>(min_k, max_k)(rng);
  std::vector<Vec2> pts;
  for (int i = 0; i < k; ++i) {
    const double th = uniform(rng, 0, std::numbers::pi), r = uniform(rng, 0.5, 2.0);
    pts.push_back({r * std::cos(th), r * std::sin(th)});
    pts.push_back({-r * std::cos(th), -r * std::sin(th)});
  }
  // a thin hull is possible with 2 directions; pad with a fixed pair off the line
  if (k == 2) {
    pts.push_back({-pts[0].y, pts[0].x});
    pts.push_back({pts[0].y, -pts[0].x});
  }
  return ConvexPolygon::hull(pts);
}

inline ConvexPolygon random_polygon(std::mt19937_64& rng, int k = 6) {
  std::vector<Vec2> pts;
  for (int i = 0; i < k; ++i) {
    const double th = uniform(rng, 0, 2 * std::numbers::pi), r = uniform(rng, 0.5, 2.0);
    pts.push_back({r * std::cos(th) + 0.3, r * std::sin(th) - 0.2});
  }
  pts.push_back({2.1, 0.0});
  pts.push_back({-1.9, 0.1});
  pts.push_back({0.0, 2.0});
  return ConvexPolygon::hull(pts);
}

inline RevolutionBody random_body(std::mt19937_64& rng, int dim, std::size_t samples = 513) {
  return random_profile_body(dim, 1.0, 6.0, samples, rng());
}

// f on [-6, 6]: one of truncated Gaussian, Laplace-type, one-sided exponential, interval indicator,
// possibly multiplied by a window
inline GridFn1D random_log_concave(std::mt19937_64& rng, std::size_t n = 513) {
  const int kind = std::uniform_int_distribution<int>(0, 3)(rng);
  const double mu = uniform(rng, -1.5, 1.5), s = uniform(rng, 0.3, 1.5);
  const double a = uniform(rng, -5.0, mu - 0.2), b = uniform(rng, mu + 0.2, 5.0);
  const bool window = uniform(rng, 0, 1) < 0.4;
  const double h = uniform(rng, 0.5, 2.0);
  auto fn = [=](double x) {
    double v = 0;
    switch (kind) {
      case 0: v = std::exp(-(x - mu) * (x - mu) / (2 * s * s)); break;
      case 1: v = std::exp(-std::abs(x - mu) / s); break;
      case 2: v = x >= a ? std::exp(-(x - a) / s) : 0.0; break;
      default: v = (x >= a && x <= b) ? 1.0 : 0.0; break;
    }
    if (window && (x < a || x > b)) v = 0;
    return h * v;
  };
  return GridFn1D::sample(fn, -6, 6, n);
}

// decreasing log-concave H on (0, hi]
inline GridFn1D random_decreasing_log_concave(std::mt19937_64& rng, std::size_t n = 513) {
  const int kind = std::uniform_int_distribution<int>(0, 2)(rng);
  const double s = uniform(rng, 0.3, 2.0), c = uniform(rng, 0.5, 3.0), h = uniform(rng, 0.5, 2.0);
  auto fn = [=](double u) {
    switch (kind) {
      case 0: return h * std::exp(-u / s);
      case 1: return h * std::exp(-u * u / (2 * s * s));
      default: return u <= c ? h : 0.0;
    }
  };
  return GridFn1D::sample_log(fn, 1e-4, 12.0, n);
}

// sup over r of sqrt(f(r) g(2t - r)) by dense sampling of r
inline double brute_sup(const GridFn1D& f, const GridFn1D& g, double t, std::size_t samples = 20001) {
  const double lo = f.x().front(), hi = f.x().back();
  double best = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    const double r = lo + (hi - lo) * i / (samples - 1.0);
    best = std::max(best, std::sqrt(f(r) * g(2 * t - r)));
  }
  for (double r : f.x()) best = std::max(best, std::sqrt(f(r) * g(2 * t - r)));
  for (double s : g.x()) {
    const double r = 2 * t - s;
    best = std::max(best, std::sqrt(f(r) * g(s)));
  }
  return best;
}

// planar support value of a point set
inline double support_points(const std::vector<Vec2>& pts, Vec2 w) {
  double best = -INFINITY;
  for (const auto& p : pts) best = std::max(best, dot(p, w));
  return best;
}

// |K^z| of a planar body through 1/2 int h_{K - z}(theta)^-2 dtheta, midpoint rule
inline double polar_area_oracle(const ConvexPolygon& k, Vec2 z, int steps = 20000) {
  std::vector<Vec2> shifted;
  for (const auto& v : k.vertices()) shifted.push_back(v - z);
  double s = 0;
  for (int i = 0; i < steps; ++i) {
    const double th = 2 * std::numbers::pi * (i + 0.5) / steps;
    const double h = support_points(shifted, {std::cos(th), std::sin(th)});
    s += 1.0 / (h * h);
  }
  return 0.5 * s * 2 * std::numbers::pi / steps;
}

// random log-concave level stacks on the shared ladder c q^k
inline std::pair<LevelStack, LevelStack> random_stack_pair(std::mt19937_64& rng, int dim, std::size_t levels = 24,
                                                           std::size_t samples = 129) {
  const double floor = 1e-4;
  std::vector<double> ladder(levels);
  for (std::size_t k = 0; k < levels; ++k) ladder[k] = std::pow(floor, static_cast<double>(k) / (levels - 1.0));
  auto one = [&]() {
    const RevolutionBody unit = random_body(rng, dim, samples);
    const double p = uniform(rng, 1.0, 3.0);
    return homothetic_stack(unit, 1.0, p, ladder);
  };
  LevelStack f = one();
  LevelStack g = one();
  return {std::move(f), std::move(g)};
}

}  // namespace testkit
