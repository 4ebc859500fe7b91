#pragma once

// Data-parallel kernels. Each has a serial reference and an OpenMP version that
// must produce identical results; the library calls the parallel one by default.

#include <cstdint>
#include <span>
#include <vector>

#include "stabgeo/common.hpp"

namespace stabgeo::kernels {

// Exact sup over r of sqrt(f(r) g(2t - r)) for each output node t, with f, g
// the piecewise-linear interpolants of (xf, vf), (xg, vg), zero outside their grids.
void sup_convolution_serial(std::span<const double> xf, std::span<const double> vf,
                            std::span<const double> xg, std::span<const double> vg,
                            std::span<const double> t, std::span<double> out);
void sup_convolution_parallel(std::span<const double> xf, std::span<const double> vf,
                              std::span<const double> xg, std::span<const double> vg,
                              std::span<const double> t, std::span<double> out);
double sup_convolution_node(std::span<const double> xf, std::span<const double> vf,
                            std::span<const double> xg, std::span<const double> vg, double t);

// Monte-Carlo hit counting in a box; chunk c uses its own generator seeded from
// (seed, c), so both versions return the same counts.
struct Box {
  std::vector<double> lo, hi;
};
using InsideFn = bool (*)(const void* ctx, const double* x);
std::uint64_t mc_hits_serial(const Box& box, InsideFn inside, const void* ctx,
                             std::uint64_t samples, std::uint64_t seed);
std::uint64_t mc_hits_parallel(const Box& box, InsideFn inside, const void* ctx,
                               std::uint64_t samples, std::uint64_t seed);

// Support values of an upper meridian chain at many (w_axis, w_perp) directions.
void support_sweep_serial(std::span<const double> t, std::span<const double> phi,
                          std::span<const double> wa, std::span<const double> wp,
                          std::span<double> out);
void support_sweep_parallel(std::span<const double> t, std::span<const double> phi,
                            std::span<const double> wa, std::span<const double> wp,
                            std::span<double> out);

}  // namespace stabgeo::kernels
