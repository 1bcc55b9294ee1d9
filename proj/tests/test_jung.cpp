#include "hadamard/error.hpp"
#include "hadamard/generators.hpp"
#include "hadamard/jung.hpp"
#include "hadamard/tree.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

using namespace hadamard;

TEST(Jung, BoundClosedForm) {
  for (int n = 1; n <= 8; ++n) EXPECT_NEAR(jung_bound(n), oracle::jung_ratio(n), 1e-15);
  EXPECT_DOUBLE_EQ(jung_bound(0), 0.0);
}

TEST(Jung, RegularSimplexIsExtremal) {
  for (int n = 1; n <= 6; ++n) {
    const auto v = regular_simplex(n);
    ASSERT_EQ(v.size(), static_cast<std::size_t>(n + 1));
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = i + 1; j < v.size(); ++j) EXPECT_NEAR((v[i] - v[j]).norm(), 1.0, 1e-12);
    std::vector<Point> pts(v.begin(), v.end());
    const auto r = jung_check(*make_euclidean(static_cast<std::size_t>(n)), pts, n);
    EXPECT_NEAR(r.slack, 0.0, 1e-9);
    EXPECT_NEAR(r.radius, oracle::jung_ratio(n), 1e-9);
  }
}

TEST(Jung, RandomSetsSatisfyBound) {
  for (int n = 1; n <= 4; ++n) {
    const auto s = make_euclidean(static_cast<std::size_t>(n));
    std::mt19937_64 rng(30 + n);
    for (int i = 0; i < 50; ++i) {
      const auto r = jung_check(*s, random_point_set(*s, rng, 10), n);
      EXPECT_GE(r.slack, -1e-7);
      EXPECT_TRUE(r.holds);
    }
  }
}

TEST(Jung, TreesMeetTheOneDimensionalBound) {
  const auto inf = std::numeric_limits<double>::infinity();
  const auto space = make_tree(MetricTree::star({inf, inf, inf, 1.0}));
  std::mt19937_64 rng(35);
  for (int i = 0; i < 30; ++i) {
    const auto r = jung_check(*space, random_point_set(*space, rng, 8, 3.0), 1);
    EXPECT_NEAR(r.ratio, 0.5, 1e-9);
  }
}

TEST(Helly, SmallSubsetsControlWholeRadius) {
  const auto s = make_euclidean(2);
  std::mt19937_64 rng(36);
  for (int i = 0; i < 20; ++i) {
    const auto pts = random_point_set(*s, rng, 8);
    const auto probe = helly_subset_check(*s, pts, 2, std::numeric_limits<double>::infinity());
    const auto rep = helly_subset_check(*s, pts, 2, probe.max_subset_radius);
    EXPECT_TRUE(rep.premise);
    EXPECT_TRUE(rep.conclusion);
    EXPECT_NEAR(rep.whole_radius, rep.max_subset_radius, 1e-6);
    // 8 choose 1..3.
    EXPECT_EQ(rep.subsets_checked, 8u + 28u + 56u);
  }
  EXPECT_THROW(helly_subset_check(*s, random_point_set(*s, rng, 13), 2, 1.0), UsageError);
}

TEST(Dimension, LowerBoundFromSimplices) {
  for (int n = 1; n <= 5; ++n) {
    const auto v = regular_simplex(n);
    std::vector<Point> pts(v.begin(), v.end());
    const auto est = dimension_lower_bound(*make_euclidean(static_cast<std::size_t>(n)), pts);
    ASSERT_TRUE(est.n.has_value());
    EXPECT_EQ(*est.n, n);
  }
}

TEST(Dimension, UnitSquareNeedsOnlyOneDimension) {
  // Circumradius / diameter of a square is 1/2, the one-dimensional bound.
  std::vector<Point> pts;
  for (auto [x, y] : {std::pair{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}}) {
    Vector v(2);
    v << x, y;
    pts.push_back(v);
  }
  const auto est = dimension_lower_bound(*make_euclidean(2), pts);
  ASSERT_TRUE(est.n.has_value());
  EXPECT_EQ(*est.n, 1);
}

TEST(Telescopic, ScanHoldsWithinDelta) {
  const auto s = make_euclidean(2);
  std::mt19937_64 rng(37);
  const auto reps = telescopic_jung_scan(*s, random_point_set(*s, rng, 30, 10.0), 2, 0.01, 1.0);
  ASSERT_FALSE(reps.empty());
  for (const auto& r : reps) {
    EXPECT_TRUE(r.holds);
    EXPECT_GT(r.diameter, 1.0);
    EXPECT_TRUE(r.scale_bucket.has_value());
  }
}

TEST(Constants, KnAndCurvedLimits) {
  EXPECT_NEAR(k_n(1), 2 * std::numbers::pi / 3, 4 * std::numeric_limits<double>::epsilon());
  for (int n = 1; n <= 6; ++n) EXPECT_NEAR(std::cos(k_n(n)), -1.0 / (n + 1), 1e-15);
  for (int n = 1; n <= 4; ++n) {
    EXPECT_NEAR(s_n(n, 1e-3) / 1e-3, 1.0 / oracle::jung_ratio(n), 1e-4);
    EXPECT_NEAR(r_n(n, 1e-3) / 1e-3, oracle::jung_ratio(n), 1e-4);
    for (double d : {0.5, 2.0, 6.0}) EXPECT_NEAR(r_n(n, d), r_n_closed_form(n, d), 1e-9);
  }
  EXPECT_THROW(s_n(2, 2.0), NonConvexRegimeError);
}

TEST(Constants, SphericalSimplexDiameter) {
  // n = 1: two points at angle 2r on a great circle.
  EXPECT_NEAR(s_n(1, 0.3), 0.6, 1e-12);
  // n = 2: vertices cos r c + sin r u_i with <u_i, u_j> = -1/2.
  const double r = std::numbers::pi / 4;
  const double cos_d = std::cos(r) * std::cos(r) - 0.5 * std::sin(r) * std::sin(r);
  EXPECT_NEAR(s_n(2, r), std::acos(cos_d), 1e-12);
}
