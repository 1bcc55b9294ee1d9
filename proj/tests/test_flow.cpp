#include "hadamard/flow.hpp"
#include "hadamard/generators.hpp"
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

TEST(Flow, DistanceToBallMovesStraightAtUnitSpeed) {
  const auto s = make_euclidean(2);
  const auto f = distance_field(make_ball(s, Point(vec({5, 0})), 1.0));
  const auto tr = run_flow(f, s->origin(), 2.0, 0.01);
  // Closed form: x(t) = (t, 0) until the ball is reached.
  EXPECT_TRUE(tr.points.back().coords().isApprox(vec({2, 0}), 1e-9));
  EXPECT_NEAR(tr.values.back(), 2.0, 1e-9);
  for (double g : tr.grad_norms) EXPECT_NEAR(g, 1.0, 1e-9);
}

TEST(Flow, ProximalStepOfAffineField) {
  const auto s = make_euclidean(3);
  const auto f = affine_field(s, vec({1, 2, 2}), 0.0);
  const Point x = flow_step(f, Point(vec({1, 1, 1})), 0.5);
  EXPECT_TRUE(x.coords().isApprox(vec({0.5, 0, 0}), 1e-9));
}

TEST(Flow, StopsAtMinimum) {
  const auto s = make_euclidean(2);
  const auto f = distance_field(make_ball(s, s->origin(), 1.0));
  const auto tr = run_flow(f, Point(vec({0, 3})), 5.0, 0.01);
  EXPECT_NEAR(tr.points.back().coords().norm(), 1.0, 1e-9);
}

TEST(Flow, SemicontractionForMaxAffine) {
  const auto s = make_euclidean(3);
  std::mt19937_64 rng(11);
  for (int i = 0; i < 5; ++i) {
    const auto f = random_max_affine(s, rng);
    for (int k = 0; k < 5; ++k)
      EXPECT_LE(semicontraction_check(f, s->sample(rng, 2.0), s->sample(rng, 2.0), 0.2, 1e-3), 1.0 + 1e-6);
  }
}

TEST(Flow, EnergyResidualShrinksWithStep) {
  const auto s = make_euclidean(2);
  std::mt19937_64 rng(12);
  const auto f = random_smooth_field(s, rng, 3, 3.0);
  const auto a = run_flow(f, s->origin(), 1.0, 2e-3);
  const auto b = run_flow(f, s->origin(), 1.0, 1e-3);
  double ra = 0.0, rb = 0.0;
  for (double r : a.energy_residuals) ra = std::max(ra, r);
  for (double r : b.energy_residuals) rb = std::max(rb, r);
  EXPECT_LT(rb, ra);
  EXPECT_LT(b.energy_constant, 2.0 * a.energy_constant);
  EXPECT_GT(b.energy_constant, 0.5 * a.energy_constant);
}

TEST(Escape, AffineFieldVelocityAndDirection) {
  const auto s = make_euclidean(2);
  const auto f = affine_field(s, vec({0.6, 0.8}), 0.0);
  const auto tr = run_flow(f, s->origin(), 64.0, 0.1);
  const auto e = velocity_of_escape(tr, lipschitz_bound(f));
  EXPECT_NEAR(e.velocity, 1.0, 1e-6);
  ASSERT_TRUE(e.direction.has_value());
  EXPECT_TRUE(e.direction->vector().isApprox(vec({-0.6, -0.8}), 1e-6));
  EXPECT_FALSE(e.bounded);
}

TEST(Escape, TreeBusemannFlowsAlongRay) {
  const auto inf = std::numeric_limits<double>::infinity();
  const auto space = make_tree(MetricTree::star({inf, inf, 1.0}));
  const auto& t = dynamic_cast<const TreeSpace&>(*space);
  const auto f = busemann_field(space, TreeRay{0}, t.origin());
  const auto tr = run_flow(f, t.at(1, 2.0), 32.0, 0.1);
  const auto e = velocity_of_escape(tr);
  EXPECT_NEAR(e.velocity, 1.0, 1e-6);
  ASSERT_TRUE(e.direction.has_value());
  EXPECT_EQ(e.direction->ray().edge, 0u);
}

TEST(Monotone, BusemannIsMonotoneAlongItsDirection) {
  const auto s = make_euclidean(2);
  const auto f = busemann_field(s, vec({1, 0}), s->origin());
  EXPECT_TRUE(monotone_point_check(f, Vector(vec({1, 0})), {s->origin()}).monotone);
  EXPECT_FALSE(monotone_point_check(f, Vector(vec({-1, 0})), {s->origin()}).monotone);
}
