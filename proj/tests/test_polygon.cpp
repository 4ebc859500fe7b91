#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "stabgeo/polygon.hpp"

using namespace stabgeo;

TEST(Polygon, SquareBasics) {
  const auto sq = ConvexPolygon::box(-1, -1, 1, 1);
  EXPECT_DOUBLE_EQ(sq.area(), 4.0);
  EXPECT_NEAR(sq.centroid().x, 0.0, 1e-15);
  EXPECT_NEAR(sq.support({1, 1}), 2.0, 1e-15);
  EXPECT_NEAR(sq.diameter(), 2 * std::sqrt(2.0), 1e-15);
  EXPECT_TRUE(sq.is_o_symmetric());
  EXPECT_TRUE(sq.contains({1, 0}));
  EXPECT_FALSE(sq.interior({1, 0}));
}

TEST(Polygon, RejectsBadVertexLists) {
  EXPECT_THROW(ConvexPolygon({{0, 0}, {1, 0}}), Error);
  EXPECT_THROW(ConvexPolygon({{0, 0}, {1, 0}, {2, 0}}), DegenerateInput);
  EXPECT_THROW(ConvexPolygon({{0, 0}, {0, 1}, {1, 0}}), InvalidArgument);                  // clockwise
  EXPECT_THROW(ConvexPolygon({{0, 0}, {2, 0}, {1, 0.2}, {2, 2}, {0, 2}}), InvalidArgument);  // reflex
  EXPECT_THROW(ConvexPolygon({{0, 0}, {1, 0}, {1, 0}, {0, 1}}), Error);
}

TEST(Polygon, HullDropsInteriorAndCollinear) {
  const auto h = ConvexPolygon::hull({{0, 0}, {1, 0}, {2, 0}, {2, 2}, {1, 1}, {0, 2}});
  EXPECT_EQ(h.size(), 4u);
  EXPECT_DOUBLE_EQ(h.area(), 4.0);
}

TEST(Polygon, MinkowskiSumSupportsAdd) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const auto a = testkit::random_polygon(rng), b = testkit::random_symmetric_polygon(rng);
    const auto s = minkowski_sum(a, b);
    for (int k = 0; k < 32; ++k) {
      const double th = 2 * std::numbers::pi * k / 32 + 0.01;
      const Vec2 w{std::cos(th), std::sin(th)};
      EXPECT_NEAR(s.support(w), a.support(w) + b.support(w), 1e-12);
    }
  }
}

TEST(Polygon, DisjointTranslatesHaveNoOverlap) {
  const auto sq = ConvexPolygon::box(-1, -1, 1, 1);
  EXPECT_FALSE(intersect(sq, sq.translated({3, 0})).has_value());
  EXPECT_DOUBLE_EQ(intersection_area(sq, sq.translated({3, 0})), 0.0);
  EXPECT_NEAR(intersection_area(sq, sq.translated({1, 0})), 2.0, 1e-14);
}

TEST(Polygon, HausdorffOfNestedSquares) {
  const auto a = ConvexPolygon::box(-1, -1, 1, 1), b = ConvexPolygon::box(-2, -1, 2, 1);
  EXPECT_NEAR(hausdorff_distance(a, b), 1.0, 1e-14);
  EXPECT_NEAR(hausdorff_distance(a, a.translated({0.5, 0})), 0.5, 1e-14);
}

TEST(Polygon, HausdorffMatchesDenseSupportScan) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = testkit::random_polygon(rng), b = testkit::random_symmetric_polygon(rng);
    double dense = 0;
    for (int k = 0; k < 200000; ++k) {
      const double th = 2 * std::numbers::pi * k / 200000;
      const Vec2 w{std::cos(th), std::sin(th)};
      dense = std::max(dense, std::abs(a.support(w) - b.support(w)));
    }
    const double exact = hausdorff_distance(a, b);
    // |h_a - h_b| is Lipschitz in theta with constant <= max |v|, sample gap pi / 200000
    double lip = 0;
    for (const auto& v : a.vertices()) lip = std::max(lip, norm(v));
    double lb = 0;
    for (const auto& v : b.vertices()) lb = std::max(lb, norm(v));
    EXPECT_GE(exact, dense - 1e-12);
    EXPECT_LE(exact, dense + (lip + lb) * std::numbers::pi / 200000);
  }
}

TEST(Polygon, RegularPolygonArea) {
  const auto p = ConvexPolygon::regular(6, 1.0);
  EXPECT_NEAR(p.area(), 1.5 * std::sqrt(3.0), 1e-14);
  EXPECT_TRUE(p.is_o_symmetric());
  EXPECT_FALSE(ConvexPolygon::regular(3, 1.0).is_o_symmetric());
}
