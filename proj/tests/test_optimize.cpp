#include <gtest/gtest.h>

#include <cmath>

#include "stabgeo/optimize.hpp"

using namespace stabgeo;

TEST(Optimize, NelderMeadRosenbrock) {
  auto f = [](std::span<const double> x) {
    return 100 * (x[1] - x[0] * x[0]) * (x[1] - x[0] * x[0]) + (1 - x[0]) * (1 - x[0]);
  };
  const auto r = nelder_mead(f, {-1.2, 1.0}, {0.1, 0.1});
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.x[0], 1.0, 1e-6);
  EXPECT_NEAR(r.x[1], 1.0, 1e-6);
}

TEST(Optimize, NelderMeadTreatsNanAsInfinite) {
  auto f = [](std::span<const double> x) { return x[0] < 0 ? NAN : (x[0] - 2) * (x[0] - 2); };
  const auto r = nelder_mead(f, {1.0}, {0.5});
  EXPECT_NEAR(r.x[0], 2.0, 1e-8);
}

TEST(Optimize, GoldenSection) {
  const auto r = golden_section([](double x) { return (x - 0.3) * (x - 0.3); }, -1, 2, 1e-10);
  EXPECT_NEAR(r.x, 0.3, 1e-9);
}

TEST(Optimize, ScanFindsGlobalBasin) {
  auto f = [](double x) { return std::cos(3 * x) + 0.1 * x * x; };
  const auto r = scan_then_golden(f, -4, 4, 401, 1e-10);
  // global minimum near +-1.0 with the quadratic penalty
  EXPECT_LT(r.f, -0.88);
  EXPECT_LT(std::abs(std::abs(r.x) - 1.04), 0.05);
}
