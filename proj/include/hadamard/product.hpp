#pragma once

#include "hadamard/space.hpp"

#include <optional>
#include <vector>

namespace hadamard {

/// l2 product of model spaces.
class ProductSpace final : public Space {
 public:
  explicit ProductSpace(std::vector<SpacePtr> factors);

  SpaceKind kind() const override { return SpaceKind::Product; }
  std::size_t dimension() const override;
  std::string describe() const override;
  bool is_cat0() const override;

  void validate(const Point& x) const override;
  double distance(const Point& x, const Point& y) const override;
  Point geodesic_point(const Point& x, const Point& y, double t) const override;
  Point radial_point(const Point& p, const Point& q, double r) const override;
  std::optional<std::size_t> chart_dimension(const Point& p) const override;
  Point chart_exp(const Point& p, const Vector& direction, double r) const override;
  std::vector<Point> probe_sphere(const Point& p, double r, std::size_t count) const override;
  Point sample(std::mt19937_64& rng, double scale) const override;
  Point origin() const override;

  bool supports_boundary() const override;
  void validate(const BoundaryDirection& u) const override;
  Point ray_point(const Point& x, const BoundaryDirection& u, double t) const override;
  double busemann(const BoundaryDirection& u, const Point& base, const Point& x) const override;

  const std::vector<SpacePtr>& factors() const { return factors_; }

 private:
  std::vector<SpacePtr> factors_;
};

}  // namespace hadamard
