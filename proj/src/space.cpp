#include "hadamard/space.hpp"

#include "hadamard/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hadamard {

const Vector& Point::coords() const {
  if (const auto* v = std::get_if<Vector>(&data_)) return *v;
  throw UsageError("point does not carry coordinates");
}

const TreeLocation& Point::tree_location() const {
  if (const auto* l = std::get_if<TreeLocation>(&data_)) return *l;
  throw UsageError("point is not a tree location");
}

const std::vector<Point>& Point::parts() const {
  if (const auto* p = std::get_if<ProductCoords>(&data_)) return p->parts;
  throw UsageError("point is not a product point");
}

const Vector& BoundaryDirection::vector() const {
  if (const auto* v = std::get_if<Vector>(&data)) return *v;
  throw UsageError("boundary direction is not a vector");
}

const TreeRay& BoundaryDirection::ray() const {
  if (const auto* r = std::get_if<TreeRay>(&data)) return *r;
  throw UsageError("boundary direction is not a tree ray");
}

const ProductDirection& BoundaryDirection::product() const {
  if (const auto* p = std::get_if<ProductDirection>(&data)) return *p;
  throw UsageError("boundary direction is not a product direction");
}

std::string to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::Euclidean: return "euclidean";
    case SpaceKind::Sphere: return "sphere";
    case SpaceKind::Hyperbolic: return "hyperbolic";
    case SpaceKind::MetricTree: return "tree";
    case SpaceKind::Product: return "product";
    case SpaceKind::TruncatedHilbertBox: return "hilbert_box";
  }
  return "unknown";
}

std::optional<std::size_t> Space::chart_dimension(const Point& /*p*/) const { return std::nullopt; }

Point Space::chart_exp(const Point& /*p*/, const Vector& /*direction*/, double /*r*/) const {
  throw CapabilityError(describe() + " has no tangent chart");
}

std::vector<Point> Space::probe_sphere(const Point& p, double r, std::size_t count) const {
  const auto dim = chart_dimension(p);
  if (!dim) throw CapabilityError(describe() + " cannot enumerate probe spheres");
  std::vector<Point> out;
  for (const auto& u : unit_directions(*dim, count)) out.push_back(chart_exp(p, u, r));
  return out;
}

void Space::validate(const BoundaryDirection& /*u*/) const {
  throw CapabilityError(describe() + " has no representable boundary directions");
}

Point Space::ray_point(const Point& /*x*/, const BoundaryDirection& /*u*/, double /*t*/) const {
  throw CapabilityError(describe() + " has no representable geodesic rays");
}

double Space::busemann(const BoundaryDirection& /*u*/, const Point& /*base*/,
                       const Point& /*x*/) const {
  throw CapabilityError(describe() + " has no closed-form Busemann functions");
}

std::vector<Vector> unit_directions(std::size_t dim, std::size_t count) {
  std::vector<Vector> out;
  if (dim == 0) return out;
  if (dim == 1) {
    out.push_back(Vector::Constant(1, 1.0));
    out.push_back(Vector::Constant(1, -1.0));
    return out;
  }
  if (dim == 2) {
    count = std::max<std::size_t>(count, 4);
    for (std::size_t k = 0; k < count; ++k) {
      const double a = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(count);
      Vector u(2);
      u << std::cos(a), std::sin(a);
      out.push_back(u);
    }
    return out;
  }
  for (std::size_t i = 0; i < dim; ++i) {
    Vector u = Vector::Zero(static_cast<Eigen::Index>(dim));
    u(static_cast<Eigen::Index>(i)) = 1.0;
    out.push_back(u);
    out.push_back(-u);
  }
  std::mt19937_64 rng(0x9E3779B97F4A7C15ULL);
  std::normal_distribution<double> normal;
  while (out.size() < count) {
    Vector u(static_cast<Eigen::Index>(dim));
    for (Eigen::Index i = 0; i < u.size(); ++i) u(i) = normal(rng);
    const double n = u.norm();
    if (n > 1e-6) out.push_back(u / n);
  }
  return out;
}

double comparison_check(const Space& space, const Point& x, const Point& y, const Point& z,
                        double t) {
  const double a = space.distance(x, y);
  const double b = space.distance(x, z);
  const double c = space.distance(y, z);
  const Point m = space.geodesic_point(x, y, t);
  // Stewart's theorem in the comparison triangle.
  const double bar2 = (1.0 - t) * b * b + t * c * c - t * (1.0 - t) * a * a;
  return std::sqrt(std::max(0.0, bar2)) - space.distance(m, z);
}

double angle_between(const Vector& a, const Vector& b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) throw UsageError("angle with a zero vector");
  // atan2 form stays accurate for nearly parallel vectors.
  const Vector ua = a / na;
  const Vector ub = b / nb;
  return 2.0 * std::atan2((ua - ub).norm(), (ua + ub).norm());
}

}  // namespace hadamard
