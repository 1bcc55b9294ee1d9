#pragma once

#include "hadamard/field.hpp"
#include "hadamard/space.hpp"

#include <random>
#include <vector>

namespace hadamard {

/// `count` seeded samples of the space at the given scale.
std::vector<Point> random_point_set(const Space& space, std::mt19937_64& rng, std::size_t count,
                                    double scale = 1.0);

/// max_i (<a_i, x> + c_i) with Gaussian directions, |a_i| in [0.5, 1] and
/// standard normal constants.
ScalarField random_max_affine(SpacePtr space, std::mt19937_64& rng, std::size_t members = 4);

/// Convex combination of normalized distances to anchors at distance
/// `radius` from the origin: smooth near the origin, 1-Lipschitz, with
/// gradient norm bounded away from 0 when the anchors are spread.
ScalarField random_smooth_field(SpacePtr space, std::mt19937_64& rng, std::size_t anchors = 3,
                                double radius = 20.0);

}  // namespace hadamard
