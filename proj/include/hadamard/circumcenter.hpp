#pragma once

#include "hadamard/space.hpp"

#include <optional>
#include <vector>

namespace hadamard {

struct CircumOptions {
  /// Starting point of the descent; defaults to the midpoint between the
  /// first point and the point farthest from it.
  std::optional<Point> start;
  int descent_iterations = 400;
};

struct CircumResult {
  Point center;
  double radius = 0.0;
  /// Indices of points within the support tolerance of the radius.
  std::vector<std::size_t> support;
  int iterations = 0;
  /// max_i d(center, p_i) - radius after the final stage.
  double residual = 0.0;
  /// True when an exact support-set solve certified the result.
  bool exact = false;
};

/// Minimises max_i d(x, p_i). A farthest-point geodesic subgradient descent
/// (step c/k, or half the gap to the runner-up when the farthest point is
/// unique) gives a starting centre; Euclidean, spherical and hyperbolic
/// spaces then solve exactly by growing a support set of at most d+1 points,
/// trees take the midpoint of a diametral pair.
///
/// Throws UsageError for empty input and NonConvexRegimeError when a
/// spherical set has circumradius >= pi/2.
CircumResult circumcenter(const Space& space, const std::vector<Point>& points, const CircumOptions& options = {});

/// max_{i,j} d(p_i, p_j).
double diameter(const Space& space, const std::vector<Point>& points);

}  // namespace hadamard
