#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "stabgeo/kernels.hpp"

using namespace stabgeo;

TEST(Kernels, SupConvolutionSerialEqualsParallel) {
  std::mt19937_64 rng(1);
  const auto f = testkit::random_log_concave(rng, 401), g = testkit::random_log_concave(rng, 301);
  std::vector<double> t(999);
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = -6 + 12.0 * i / (t.size() - 1.0);
  std::vector<double> a(t.size()), b(t.size());
  kernels::sup_convolution_serial(f.x(), f.values(), g.x(), g.values(), t, a);
  kernels::sup_convolution_parallel(f.x(), f.values(), g.x(), g.values(), t, b);
  EXPECT_EQ(a, b);
}

TEST(Kernels, SupConvolutionNodeMatchesDenseScan) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = testkit::random_log_concave(rng, 65), g = testkit::random_log_concave(rng, 49);
    for (double t : {-2.0, -0.37, 0.0, 0.51, 1.9}) {
      const double exact = kernels::sup_convolution_node(f.x(), f.values(), g.x(), g.values(), t);
      const double dense = testkit::brute_sup(f, g, t, 200001);
      EXPECT_GE(exact, dense - 1e-12);
      EXPECT_LE(exact, dense + 1e-5 * std::max(1.0, exact));
    }
  }
}

namespace {
bool in_disk(const void*, const double* x) { return x[0] * x[0] + x[1] * x[1] <= 1; }
}  // namespace

TEST(Kernels, HitCountsSerialEqualsParallel) {
  const kernels::Box box{{-1, -1}, {1, 1}};
  EXPECT_EQ(kernels::mc_hits_serial(box, in_disk, nullptr, 123457, 9),
            kernels::mc_hits_parallel(box, in_disk, nullptr, 123457, 9));
  const auto hits = kernels::mc_hits_parallel(box, in_disk, nullptr, 1000000, 3);
  EXPECT_NEAR(4.0 * hits / 1e6, std::numbers::pi, 0.01);
}

TEST(Kernels, SupportSweepMatchesVertexScan) {
  const auto k = RevolutionBody::ball_slab(3, 1.0, 0.3, 257);
  std::vector<double> wa, wp;
  for (int i = 0; i < 100; ++i) {
    const double th = std::numbers::pi * i / 99.0;
    wa.push_back(std::cos(th));
    wp.push_back(std::sin(th));
  }
  std::vector<double> s(100), p(100);
  kernels::support_sweep_serial(k.t(), k.phi(), wa, wp, s);
  kernels::support_sweep_parallel(k.t(), k.phi(), wa, wp, p);
  EXPECT_EQ(s, p);
  for (int i = 0; i < 100; ++i) {
    double best = -INFINITY;
    for (std::size_t j = 0; j < k.size(); ++j) best = std::max(best, wa[i] * k.t()[j] + wp[i] * k.phi()[j]);
    EXPECT_NEAR(s[i], best, 1e-15);
  }
}
