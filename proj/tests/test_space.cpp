#include "hadamard/error.hpp"
#include "hadamard/product.hpp"
#include "hadamard/space.hpp"
#include "hadamard/tree.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

using namespace hadamard;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

MetricTree sample_tree() {
  // 0 - 1 - 2, 1 - 3, rays at 0 and 3.
  MetricTree t;
  t.vertex_count = 4;
  t.edges = {{0, 1, 2.0}, {1, 2, 1.5}, {1, 3, 0.5}, {0, std::nullopt}, {3, std::nullopt}};
  return t;
}

}  // namespace

TEST(Euclidean, DistanceAndGeodesic) {
  const auto s = make_euclidean(3);
  Vector x(3), y(3);
  x << 1, 2, 3;
  y << -1, 0, 4;
  EXPECT_DOUBLE_EQ(s->distance(x, y), 3.0);
  EXPECT_TRUE(s->geodesic_point(x, y, 0.25).coords().isApprox(0.75 * x + 0.25 * y));
  EXPECT_NEAR(s->distance(x, s->radial_point(x, y, 7.0)), 7.0, 1e-12);
}

TEST(Euclidean, BusemannMatchesClosedForm) {
  const auto s = make_euclidean(2);
  Vector u(2), x(2);
  u << 0.6, 0.8;
  x << 3, -1;
  EXPECT_NEAR(s->busemann(u, s->origin(), x), oracle::euclidean_busemann(u, x), 1e-14);
}

TEST(Euclidean, RejectsWrongDimension) {
  const auto s = make_euclidean(2);
  EXPECT_THROW(s->validate(Point(Vector(Vector::Zero(3)))), UsageError);
}

TEST(Sphere, DistanceMatchesChordFormula) {
  const auto s = make_sphere(2);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    const auto x = s->sample(rng, 1.0), y = s->sample(rng, 1.0);
    EXPECT_NEAR(s->distance(x, y), oracle::sphere_distance(x.coords(), y.coords()), 1e-12);
  }
  EXPECT_FALSE(s->is_cat0());
}

TEST(Hyperbolic, DistanceMatchesHyperboloidFormula) {
  const auto s = make_hyperbolic(3);
  std::mt19937_64 rng(4);
  for (int i = 0; i < 50; ++i) {
    const auto x = s->sample(rng, 2.0), y = s->sample(rng, 2.0);
    EXPECT_NEAR(s->distance(x, y), oracle::hyperboloid_distance(x.coords(), y.coords()), 1e-9);
    const auto m = s->geodesic_point(x, y, 0.3);
    EXPECT_NEAR(s->distance(x, m), 0.3 * s->distance(x, y), 1e-9);
  }
}

TEST(HilbertBox, CoordinateBounds) {
  const auto s = make_hilbert_box(3);
  Vector ok(3), bad(3);
  ok << 1, -2, 3;
  bad << 1.5, 0, 0;
  EXPECT_NO_THROW(s->validate(Point(ok)));
  EXPECT_THROW(s->validate(Point(bad)), UsageError);
  EXPECT_FALSE(s->supports_boundary());
}

TEST(Tree, DistancesMatchDijkstra) {
  const auto space = make_tree(sample_tree());
  const auto& t = dynamic_cast<const TreeSpace&>(*space);
  oracle::Tree o;
  // Rays become long finite edges ending in private vertices.
  o.vertices = 6;
  o.edges = {{0, 1, 2.0}, {1, 2, 1.5}, {1, 3, 0.5}, {0, 4, 1e6}, {3, 5, 1e6}};
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::size_t> edge(0, 4);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double lengths[] = {2.0, 1.5, 0.5, 10.0, 10.0};
  for (int i = 0; i < 200; ++i) {
    const std::size_t ea = edge(rng), eb = edge(rng);
    const double oa = lengths[ea] * unit(rng), ob = lengths[eb] * unit(rng);
    const double d = t.distance(t.at(ea, oa), t.at(eb, ob));
    EXPECT_NEAR(d, oracle::tree_distance(o, {ea, oa}, {eb, ob}), 1e-12);
  }
}

TEST(Tree, GeodesicPointSplitsDistance) {
  const auto space = make_tree(sample_tree());
  const auto& t = dynamic_cast<const TreeSpace&>(*space);
  const auto x = t.at(1, 1.0), y = t.at(4, 3.0);
  const double d = t.distance(x, y);
  for (double s : {0.0, 0.2, 0.5, 0.9, 1.0}) {
    const auto m = t.geodesic_point(x, y, s);
    EXPECT_NEAR(t.distance(x, m), s * d, 1e-12);
    EXPECT_NEAR(t.distance(m, y), (1 - s) * d, 1e-12);
  }
}

TEST(Tree, BusemannAlongRay) {
  const auto space = make_tree(MetricTree::star({kInf, kInf, 1.0}));
  const auto& t = dynamic_cast<const TreeSpace&>(*space);
  ASSERT_EQ(t.rays().size(), 2u);
  const BoundaryDirection u = TreeRay{t.rays()[0]};
  // b(x) = -offset on the ray, +distance elsewhere.
  EXPECT_NEAR(t.busemann(u, t.origin(), t.at(t.rays()[0], 4.0)), -4.0, 1e-12);
  EXPECT_NEAR(t.busemann(u, t.origin(), t.at(t.rays()[1], 4.0)), 4.0, 1e-12);
  EXPECT_NEAR(t.busemann(u, t.origin(), t.at(2, 0.5)), 0.5, 1e-12);
}

TEST(Product, PythagoreanDistance) {
  const auto e = make_euclidean(2);
  const auto tr = make_tree(MetricTree::star({kInf, kInf}));
  const auto& t = dynamic_cast<const TreeSpace&>(*tr);
  const ProductSpace p({e, tr});
  Vector a(2), b(2);
  a << 0, 0;
  b << 3, 0;
  const Point x(std::vector<Point>{Point(a), t.at(0, 1.0)});
  const Point y(std::vector<Point>{Point(b), t.at(1, 3.0)});
  EXPECT_NEAR(p.distance(x, y), 5.0, 1e-12);
  EXPECT_TRUE(p.is_cat0());
  EXPECT_EQ(p.dimension(), 3u);
}

TEST(Comparison, NonNegativeInCat0Spaces) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> ut(0.0, 1.0);
  for (const auto& s : {make_euclidean(3), make_hyperbolic(2), make_tree(sample_tree()), make_hilbert_box(4)}) {
    for (int i = 0; i < 200; ++i) {
      const auto x = s->sample(rng, 2.0), y = s->sample(rng, 2.0), z = s->sample(rng, 2.0);
      if (s->distance(x, y) == 0.0) continue;
      EXPECT_GE(comparison_check(*s, x, y, z, ut(rng)), -1e-9) << s->describe();
    }
  }
}

TEST(Comparison, SphereTriangleViolates) {
  const auto s = make_sphere(2);
  Vector a(3), b(3), c(3);
  a << 1, 0, 0;
  b << 0, 1, 0;
  c << 0, 0, 1;
  // Spherical midpoint of [a, b] is at pi/2 from c; the flat comparison
  // median of an equilateral triangle of side pi/2 is shorter.
  const double defect = comparison_check(*s, a, b, c, 0.5);
  EXPECT_NEAR(defect, std::sqrt(3.0) / 2 * std::numbers::pi / 2 - std::numbers::pi / 2, 1e-12);
}

TEST(Directions, UnitAndDeterministic) {
  const auto a = unit_directions(3, 40), b = unit_directions(3, 40);
  ASSERT_EQ(a.size(), 40u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_NEAR(a[i].norm(), 1.0, 1e-12);
    EXPECT_EQ(a[i], b[i]);
  }
}
