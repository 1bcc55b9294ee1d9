// Sanity checks of the reference implementations themselves.

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

TEST(Oracle, MinimalBallOfKnownSets) {
  using V = oracle::Vec;
  auto v2 = [](double x, double y) {
    V v(2);
    v << x, y;
    return v;
  };
  // Obtuse triangle: the long side is a diameter.
  auto b = oracle::minimal_ball({v2(0, 0), v2(4, 0), v2(2, 0.5)});
  EXPECT_NEAR(b.radius, 2.0, 1e-12);
  // Equilateral triangle of unit side.
  b = oracle::minimal_ball({v2(0, 0), v2(1, 0), v2(0.5, std::sqrt(3.0) / 2)});
  EXPECT_NEAR(b.radius, 1.0 / std::sqrt(3.0), 1e-12);
  // Duplicates and a single point.
  b = oracle::minimal_ball({v2(1, 1), v2(1, 1)});
  EXPECT_NEAR(b.radius, 0.0, 1e-12);
}

TEST(Oracle, TreeDistanceOnPath) {
  oracle::Tree t{3, {{0, 1, 2.0}, {1, 2, 3.0}}};
  EXPECT_NEAR(oracle::tree_distance(t, {0, 0.5}, {1, 1.0}), 2.5, 1e-15);
  EXPECT_NEAR(oracle::tree_distance(t, {1, 0.5}, {1, 2.0}), 1.5, 1e-15);
}
