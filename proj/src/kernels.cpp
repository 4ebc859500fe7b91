#include "stabgeo/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace stabgeo::kernels {

namespace {

inline double lerp_cell(const double* x, const double* v, std::size_t i, double r) {
  const double h = x[i + 1] - x[i];
  return v[i] + (v[i + 1] - v[i]) * ((r - x[i]) / h);
}

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t kChunks = 64;

std::uint64_t chunk_hits(const Box& box, InsideFn inside, const void* ctx, std::uint64_t n,
                         std::uint64_t seed, std::uint64_t chunk) {
  std::mt19937_64 rng(splitmix64(seed ^ splitmix64(chunk + 1)));
  const std::size_t d = box.lo.size();
  std::vector<double> x(d);
  std::uint64_t hits = 0;
  for (std::uint64_t s = 0; s < n; ++s) {
    for (std::size_t k = 0; k < d; ++k) {
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      x[k] = box.lo[k] + u * (box.hi[k] - box.lo[k]);
    }
    hits += inside(ctx, x.data()) ? 1 : 0;
  }
  return hits;
}

std::uint64_t chunk_size(std::uint64_t samples, std::uint64_t c) {
  return samples / kChunks + (c < samples % kChunks ? 1 : 0);
}

}  // namespace

double sup_convolution_node(std::span<const double> xf, std::span<const double> vf,
                            std::span<const double> xg, std::span<const double> vg, double t) {
  const std::size_t nf = xf.size(), ng = xg.size();
  const double lo = std::max(xf[0], 2 * t - xg[ng - 1]);
  const double hi = std::min(xf[nf - 1], 2 * t - xg[0]);
  if (lo > hi) return 0.0;
  std::size_t i = static_cast<std::size_t>(std::upper_bound(xf.begin(), xf.end(), lo) - xf.begin());
  i = std::min(i == 0 ? 0 : i - 1, nf - 2);
  const double s0 = 2 * t - lo;
  std::size_t j = static_cast<std::size_t>(std::upper_bound(xg.begin(), xg.end(), s0) - xg.begin());
  j = std::min(j == 0 ? 0 : j - 1, ng - 2);
  double best = 0.0;
  double r = lo;
  while (true) {
    const double rn = std::min({xf[i + 1], 2 * t - xg[j], hi});
    const double a = std::max(r, xf[i]);
    const double b = std::max(rn, a);
    const double f0 = lerp_cell(xf.data(), vf.data(), i, a);
    const double f1 = lerp_cell(xf.data(), vf.data(), i, b);
    const double g0 = lerp_cell(xg.data(), vg.data(), j, 2 * t - a);
    const double g1 = lerp_cell(xg.data(), vg.data(), j, 2 * t - b);
    best = std::max({best, f0 * g0, f1 * g1});
    const double df = f1 - f0, dg = g1 - g0;
    if (df * dg < 0) {
      const double s = -(f0 * dg + g0 * df) / (2 * df * dg);
      if (s > 0 && s < 1) best = std::max(best, (f0 + s * df) * (g0 + s * dg));
    }
    if (rn >= hi) break;
    bool moved = false;
    if (rn >= xf[i + 1] && i + 2 < nf) {
      ++i;
      moved = true;
    }
    if (rn >= 2 * t - xg[j] && j > 0) {
      --j;
      moved = true;
    }
    if (!moved) break;
    r = rn;
  }
  return std::sqrt(best);
}

void sup_convolution_serial(std::span<const double> xf, std::span<const double> vf,
                            std::span<const double> xg, std::span<const double> vg,
                            std::span<const double> t, std::span<double> out) {
  for (std::size_t k = 0; k < t.size(); ++k) out[k] = sup_convolution_node(xf, vf, xg, vg, t[k]);
}

void sup_convolution_parallel(std::span<const double> xf, std::span<const double> vf,
                              std::span<const double> xg, std::span<const double> vg,
                              std::span<const double> t, std::span<double> out) {
  const long n = static_cast<long>(t.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (long k = 0; k < n; ++k) out[k] = sup_convolution_node(xf, vf, xg, vg, t[k]);
}

std::uint64_t mc_hits_serial(const Box& box, InsideFn inside, const void* ctx,
                             std::uint64_t samples, std::uint64_t seed) {
  std::uint64_t hits = 0;
  for (std::uint64_t c = 0; c < kChunks; ++c)
    hits += chunk_hits(box, inside, ctx, chunk_size(samples, c), seed, c);
  return hits;
}

std::uint64_t mc_hits_parallel(const Box& box, InsideFn inside, const void* ctx,
                               std::uint64_t samples, std::uint64_t seed) {
  std::uint64_t hits = 0;
  const long nc = static_cast<long>(kChunks);
#pragma omp parallel for reduction(+ : hits) schedule(static, 1)
  for (long c = 0; c < nc; ++c)
    hits += chunk_hits(box, inside, ctx, chunk_size(samples, c), seed, static_cast<std::uint64_t>(c));
  return hits;
}

void support_sweep_serial(std::span<const double> t, std::span<const double> phi,
                          std::span<const double> wa, std::span<const double> wp,
                          std::span<double> out) {
  for (std::size_t k = 0; k < wa.size(); ++k) {
    double s = -INFINITY;
    for (std::size_t i = 0; i < t.size(); ++i) s = std::max(s, wa[k] * t[i] + wp[k] * phi[i]);
    out[k] = s;
  }
}

void support_sweep_parallel(std::span<const double> t, std::span<const double> phi,
                            std::span<const double> wa, std::span<const double> wp,
                            std::span<double> out) {
  const long n = static_cast<long>(wa.size());
#pragma omp parallel for schedule(static)
  for (long k = 0; k < n; ++k) {
    double s = -INFINITY;
    for (std::size_t i = 0; i < t.size(); ++i) s = std::max(s, wa[k] * t[i] + wp[k] * phi[i]);
    out[k] = s;
  }
}

}  // namespace stabgeo::kernels
