#include "hadamard/error.hpp"
#include "hadamard/field.hpp"
#include "hadamard/generators.hpp"
#include "hadamard/gradient.hpp"
#include "hadamard/tree.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace hadamard;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double c : v) x(i++) = c;
  return x;
}

}  // namespace

TEST(Field, EvaluatesEachForm) {
  const auto s = make_euclidean(2);
  const Point x(vec({3, 4}));
  EXPECT_DOUBLE_EQ(affine_field(s, vec({1, -1}), 2.0)(x), 1.0);
  EXPECT_NEAR(distance_field(make_ball(s, Point(vec({0, 0})), 1.0))(x), 4.0, 1e-12);
  EXPECT_NEAR(normalized_distance(s, Point(vec({3, 0})), s->origin())(x), 1.0, 1e-12);
  EXPECT_NEAR(busemann_field(s, vec({0, 1}), s->origin())(x), -4.0, 1e-12);
  const auto m = max_of({affine_field(s, vec({1, 0}), 0.0), affine_field(s, vec({0, 1}), 0.0)});
  EXPECT_DOUBLE_EQ(m(x), 4.0);
  EXPECT_EQ(active_member(m, x), 1u);
  const auto inf = inf_shift_of({{affine_field(s, vec({1, 0}), 0.0), 5.0}, {affine_field(s, vec({0, 1}), 0.0), 0.0}});
  EXPECT_DOUBLE_EQ(inf(x), 4.0);
  const auto cc = convex_combination({{0.25, affine_field(s, vec({4, 0}), 0.0)}, {0.75, shifted(m, 1.0)}});
  EXPECT_DOUBLE_EQ(cc(x), 0.25 * 12 + 0.75 * 5);
}

TEST(Field, NegationSwapsMaxAndInf) {
  const auto s = make_euclidean(2);
  std::mt19937_64 rng(9);
  const auto f = random_max_affine(s, rng);
  const auto g = negate(f);
  EXPECT_TRUE(is_concave(g));
  EXPECT_TRUE(is_convex(negate(g)));
  for (int i = 0; i < 20; ++i) {
    const auto x = s->sample(rng, 3.0);
    EXPECT_NEAR(g(x), -f(x), 1e-12);
    EXPECT_NEAR(negate(g)(x), f(x), 1e-12);
  }
  EXPECT_THROW(negate(distance_field(make_ball(s, s->origin(), 1.0))), CapabilityError);
}

TEST(Field, ConvexityDefectSigns) {
  const auto s = make_euclidean(3);
  std::mt19937_64 rng(10);
  const auto f = random_max_affine(s, rng);
  const auto d = distance_field(make_ball(s, s->origin(), 1.0));
  for (int i = 0; i < 100; ++i) {
    const auto x = s->sample(rng, 5.0), y = s->sample(rng, 5.0);
    EXPECT_GE(convexity_defect(f, x, y), -1e-12);
    EXPECT_GE(convexity_defect(d, x, y), -1e-12);
  }
  const auto a = affine_field(s, vec({1, 2, 3}), 1.0);
  EXPECT_TRUE(is_affine(a));
  EXPECT_NEAR(affinity_defect(a, {{s->origin(), Point(vec({1, 1, 1}))}}), 0.0, 1e-12);
}

TEST(Field, LipschitzBounds) {
  const auto s = make_euclidean(2);
  EXPECT_DOUBLE_EQ(lipschitz_bound(affine_field(s, vec({3, 4}), 0.0)), 5.0);
  EXPECT_DOUBLE_EQ(lipschitz_bound(busemann_field(s, vec({1, 0}), s->origin())), 1.0);
}

TEST(Gradient, AffineFieldSlope) {
  const auto s = make_euclidean(3);
  const auto f = affine_field(s, vec({1, -2, 2}), 0.0);
  // |grad(-f)| of an affine field is the norm of its normal.
  const auto g = absolute_gradient(f, Point(vec({0.3, 0.1, -2})));
  EXPECT_NEAR(g.value, 3.0, 1e-3);
}

TEST(Gradient, DistanceFieldOutsideBody) {
  const auto s = make_euclidean(2);
  const auto f = distance_field(make_ball(s, s->origin(), 1.0));
  EXPECT_NEAR(absolute_gradient(f, Point(vec({3, 0}))).value, 1.0, 1e-3);
}

TEST(Gradient, TreeBusemann) {
  const auto inf = std::numeric_limits<double>::infinity();
  const auto space = make_tree(MetricTree::star({inf, inf, inf}));
  const auto& t = dynamic_cast<const TreeSpace&>(*space);
  const auto f = busemann_field(space, TreeRay{0}, t.origin());
  EXPECT_NEAR(absolute_gradient(f, t.at(1, 2.0)).value, 1.0, 1e-9);
  EXPECT_NEAR(absolute_gradient(f, t.origin()).value, 1.0, 1e-9);
}
