#include "hadamard/circumcenter.hpp"
#include "hadamard/error.hpp"
#include "hadamard/generators.hpp"
#include "hadamard/product.hpp"
#include "hadamard/tree.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <tuple>

using namespace hadamard;

namespace {

std::vector<oracle::Vec> coords(const std::vector<Point>& pts) {
  std::vector<oracle::Vec> out;
  for (const auto& p : pts) out.push_back(p.coords());
  return out;
}

}  // namespace

class EuclideanCircumcenter : public ::testing::TestWithParam<int> {};

TEST_P(EuclideanCircumcenter, MatchesExhaustiveOracle) {
  const auto s = make_euclidean(static_cast<std::size_t>(GetParam()));
  std::mt19937_64 rng(20 + GetParam());
  std::uniform_int_distribution<std::size_t> size(1, 9);
  for (int i = 0; i < 60; ++i) {
    const auto pts = random_point_set(*s, rng, size(rng));
    const auto r = circumcenter(*s, pts);
    const auto o = oracle::minimal_ball(coords(pts));
    EXPECT_NEAR(r.radius, o.radius, 1e-7);
    EXPECT_LE((r.center.coords() - o.center).norm(), 1e-5);
    EXPECT_LE(r.residual, 1e-7);
  }
}

INSTANTIATE_TEST_SUITE_P(Dimensions, EuclideanCircumcenter, ::testing::Values(1, 2, 3));

TEST(Circumcenter, SupportOfRightTriangle) {
  const auto s = make_euclidean(2);
  std::vector<Point> pts;
  for (auto [x, y] : {std::pair{0.0, 0.0}, {2.0, 0.0}, {0.0, 2.0}, {0.5, 0.5}}) {
    Vector v(2);
    v << x, y;
    pts.push_back(v);
  }
  const auto r = circumcenter(*s, pts);
  EXPECT_NEAR(r.radius, std::sqrt(2.0), 1e-9);
  // Hypotenuse endpoints are on the sphere, and so is the right-angle vertex.
  EXPECT_EQ(r.support.size(), 3u);
}

TEST(Circumcenter, TreeIsHalfTheDiameter) {
  const auto inf = std::numeric_limits<double>::infinity();
  const auto space = make_tree(MetricTree::star({inf, inf, 2.0, 1.0}));
  std::mt19937_64 rng(21);
  for (int i = 0; i < 40; ++i) {
    const auto pts = random_point_set(*space, rng, 6, 3.0);
    const auto r = circumcenter(*space, pts);
    EXPECT_NEAR(r.radius, diameter(*space, pts) / 2.0, 1e-9);
    double far = 0.0;
    for (const auto& p : pts) far = std::max(far, space->distance(r.center, p));
    EXPECT_NEAR(far, r.radius, 1e-9);
  }
}

TEST(Circumcenter, SphereEquatorTriangle) {
  const auto s = make_sphere(2);
  std::vector<Point> pts;
  for (int k = 0; k < 3; ++k) {
    const double a = 2 * std::numbers::pi * k / 3;
    Vector v(3);
    v << std::cos(a) * std::sin(0.4), std::sin(a) * std::sin(0.4), std::cos(0.4);
    pts.push_back(v);
  }
  // Regular triangle on the circle of colatitude 0.4 about the pole.
  const auto r = circumcenter(*s, pts);
  EXPECT_NEAR(r.radius, 0.4, 1e-9);
}

TEST(Circumcenter, HyperbolicRadiusBelowHalfDiameterBound) {
  const auto s = make_hyperbolic(2);
  std::mt19937_64 rng(22);
  for (int i = 0; i < 20; ++i) {
    const auto pts = random_point_set(*s, rng, 7, 2.0);
    const auto r = circumcenter(*s, pts);
    const double d = diameter(*s, pts);
    EXPECT_GE(r.radius, d / 2 - 1e-9);
    EXPECT_LE(r.radius, d);
    double far = 0.0;
    for (const auto& p : pts) far = std::max(far, s->distance(r.center, p));
    EXPECT_NEAR(far, r.radius, 1e-7);
  }
}

TEST(Circumcenter, RejectsEmptyAndWideSphericalSets) {
  const auto e = make_euclidean(2);
  EXPECT_THROW(circumcenter(*e, {}), UsageError);
  // Regular tetrahedron vertices are not contained in any open hemisphere.
  const auto s = make_sphere(2);
  std::vector<Point> pts;
  for (auto [a, b, c] : {std::tuple{1.0, 1.0, 1.0}, {1.0, -1.0, -1.0}, {-1.0, 1.0, -1.0}, {-1.0, -1.0, 1.0}}) {
    Vector v(3);
    v << a, b, c;
    pts.push_back(Vector(v / std::sqrt(3.0)));
  }
  EXPECT_THROW(circumcenter(*s, pts), NonConvexRegimeError);
}
