#include "hadamard/generators.hpp"

#include "hadamard/error.hpp"

namespace hadamard {
namespace {

Vector gaussian_unit(std::mt19937_64& rng, std::size_t d) {
  std::normal_distribution<double> g;
  Vector v(static_cast<Eigen::Index>(d));
  do {
    for (auto& c : v) c = g(rng);
  } while (v.norm() < 1e-9);
  return v / v.norm();
}

}  // namespace

std::vector<Point> random_point_set(const Space& space, std::mt19937_64& rng, std::size_t count, double scale) {
  std::vector<Point> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(space.sample(rng, scale));
  return out;
}

ScalarField random_max_affine(SpacePtr space, std::mt19937_64& rng, std::size_t members) {
  if (!space || space->kind() != SpaceKind::Euclidean) throw UsageError("max-of-affine fields need Euclidean space");
  if (members == 0) throw UsageError("max-of-affine field needs members");
  std::uniform_real_distribution<double> len(0.5, 1.0);
  std::normal_distribution<double> g;
  std::vector<ScalarField> fs;
  for (std::size_t i = 0; i < members; ++i) {
    const Vector a = len(rng) * gaussian_unit(rng, space->dimension());
    fs.push_back(affine_field(space, a, g(rng)));
  }
  return max_of(std::move(fs));
}

ScalarField random_smooth_field(SpacePtr space, std::mt19937_64& rng, std::size_t anchors, double radius) {
  if (!space || space->kind() != SpaceKind::Euclidean) throw UsageError("smooth fields need Euclidean space");
  if (anchors == 0 || !(radius > 0.0)) throw UsageError("smooth field needs anchors and a positive radius");
  std::gamma_distribution<double> gam(1.0, 1.0);
  std::vector<double> w(anchors);
  double total = 0.0;
  for (auto& x : w) total += (x = gam(rng) + 0.1);
  std::vector<std::pair<double, ScalarField>> terms;
  double used = 0.0;
  for (std::size_t i = 0; i < anchors; ++i) {
    // The last weight closes the sum exactly.
    const double wi = i + 1 == anchors ? 1.0 - used : w[i] / total;
    used += wi;
    const Vector anchor = radius * gaussian_unit(rng, space->dimension());
    terms.emplace_back(wi, normalized_distance(space, Point(anchor), space->origin()));
  }
  return convex_combination(std::move(terms));
}

}  // namespace hadamard
