#include "hadamard/error.hpp"
#include "hadamard/filtering.hpp"
#include "hadamard/tree.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

using namespace hadamard;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double c : v) x(i++) = c;
  return x;
}

const ProbeProfile kFastProbes{1.0, 6, 32, 1, {}};

}  // namespace

TEST(Filtering, GradientFloorConstants) {
  EXPECT_NEAR(gradient_floor(1), 0.146447, 1e-6);
  for (int n = 1; n <= 5; ++n) EXPECT_NEAR(gradient_floor(n), 0.5 * (1 - std::sqrt(n / (n + 1.0))), 1e-15);
}

TEST(Filtering, HalfSpaceLimitIsBusemann) {
  const auto s = make_euclidean(2);
  const auto fam = half_space_family(s, vec({1, 0}), 16);
  EXPECT_TRUE(verify_nested(fam).nested);
  const auto limit = build_limit_field(fam);
  EXPECT_TRUE(limit.stable);
  // d(x, {x_1 >= s}) - d(0, {x_1 >= s}) = -x_1 while x_1 <= s.
  for (const auto& x : {vec({1, 2}), vec({-3, 0.5}), vec({0, 0})}) EXPECT_NEAR(limit.field(x), -x(0), 1e-9);
  const auto floor = gradient_floor_check(limit, 2, {}, kFastProbes);
  EXPECT_TRUE(floor.passes);
  EXPECT_NEAR(floor.min_observed, 1.0, 1e-3);
}

TEST(Filtering, HalfSpaceCertificate) {
  const auto s = make_euclidean(2);
  const auto limit = build_limit_field(half_space_family(s, vec({0.6, 0.8}), 16));
  const auto cert = intersection_at_infinity(limit);
  ASSERT_TRUE(cert.direction.has_value());
  EXPECT_TRUE(cert.direction->vector().isApprox(vec({0.6, 0.8}), 1e-6));
  EXPECT_TRUE(cert.in_every_body);
  EXPECT_TRUE(cert.start_independent);
  EXPECT_TRUE(cert.certified);
}

TEST(Filtering, WedgeDirectionAndMonotoneRadius) {
  const auto s = make_euclidean(2);
  const auto fam = wedge_family(s, Eigen::MatrixXd::Identity(2, 2), 16);
  const auto cert = intersection_at_infinity(build_limit_field(fam));
  ASSERT_TRUE(cert.direction.has_value());
  EXPECT_TRUE(cert.direction->vector().isApprox(vec({1, 1}).normalized(), 1e-3));
  const auto mr = monotone_radius_check(fam, *cert.direction);
  // The recession cone is the positive quadrant; its edges are at pi/4.
  EXPECT_NEAR(mr.max_angle, std::numbers::pi / 4, 1e-3);
  EXPECT_TRUE(mr.passes);
}

TEST(Filtering, ProjectionSpread) {
  const auto s = make_euclidean(2);
  const auto fam = wedge_family(s, Eigen::MatrixXd::Identity(2, 2), 8);
  const auto rep = projection_spread_check(fam, {s->origin(), Point(vec({-1, 0.5}))}, 1.0);
  EXPECT_TRUE(rep.holds);
  EXPECT_GT(rep.pairs, 0u);
}

TEST(Filtering, TreeRayFamily) {
  const auto inf = std::numeric_limits<double>::infinity();
  const auto space = make_tree(MetricTree::star({inf, inf, 1.0}));
  const auto fam = tree_ray_family(space, 1, 16);
  const auto limit = build_limit_field(fam);
  const auto cert = intersection_at_infinity(limit);
  ASSERT_TRUE(cert.direction.has_value());
  EXPECT_EQ(cert.direction->ray().edge, 1u);
  EXPECT_TRUE(cert.certified);
  EXPECT_TRUE(gradient_floor_check(limit, 1, {}, kFastProbes).passes);
}

TEST(Filtering, NonEmptyIntersectionIsRejected) {
  const auto s = make_euclidean(2);
  const auto fam = make_nested_family({make_ball(s, s->origin(), 3.0), make_ball(s, s->origin(), 2.0)}, s->origin());
  EXPECT_THROW(build_limit_field(fam), NonEmptyIntersectionError);
}

TEST(Filtering, NestednessViolationIsDetected) {
  const auto s = make_euclidean(2);
  const auto fam = make_nested_family({make_ball(s, s->origin(), 1.0), make_ball(s, Point(vec({5, 0})), 1.0)},
                                      s->origin());
  EXPECT_FALSE(verify_nested(fam).nested);
}

TEST(Filtering, HilbertBoxDistances) {
  const auto rep = hilbert_box_report(hilbert_box_family(100, 50));
  ASSERT_EQ(rep.distances.size(), 50u);
  for (std::size_t n = 1; n <= 50; ++n) EXPECT_NEAR(rep.distances[n - 1], std::sqrt(double(n)), 1e-12);
  EXPECT_NEAR(rep.slope, 1.0, 1e-9);
  EXPECT_THROW(hilbert_box_family(10, 11), UsageError);
}

TEST(Filtering, RandomFamiliesMeetFloor) {
  for (int n = 1; n <= 3; ++n) {
    const auto s = make_euclidean(static_cast<std::size_t>(n));
    std::mt19937_64 rng(40 + n);
    for (int i = 0; i < 3; ++i) {
      const auto fam = random_nested_family(s, rng);
      const auto limit = build_limit_field(fam);
      EXPECT_TRUE(gradient_floor_check(limit, n, {fam.basepoint}, kFastProbes).passes);
    }
  }
}
