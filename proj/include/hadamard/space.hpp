#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

namespace hadamard {

using Vector = Eigen::VectorXd;

/// A location on a metric tree: an edge and the distance from its `from`
/// vertex, in [0, edge length].
struct TreeLocation {
  std::size_t edge = 0;
  double offset = 0.0;
};

class Point;

struct ProductCoords {
  std::vector<Point> parts;
};

/// A point of a model space. Coordinate spaces (Euclidean, box, sphere,
/// hyperboloid) store a vector, trees store a TreeLocation, products store one
/// point per factor. The owning Space interprets and validates the data.
class Point {
 public:
  Point() = default;
  Point(Vector coords) : data_(std::move(coords)) {}  // NOLINT(google-explicit-constructor)
  Point(TreeLocation loc) : data_(loc) {}              // NOLINT(google-explicit-constructor)
  explicit Point(std::vector<Point> parts) : data_(ProductCoords{std::move(parts)}) {}

  bool has_coords() const { return std::holds_alternative<Vector>(data_); }
  bool has_tree_location() const { return std::holds_alternative<TreeLocation>(data_); }
  bool has_parts() const { return std::holds_alternative<ProductCoords>(data_); }

  const Vector& coords() const;
  const TreeLocation& tree_location() const;
  const std::vector<Point>& parts() const;

 private:
  std::variant<Vector, TreeLocation, ProductCoords> data_;
};

struct TreeRay {
  std::size_t edge = 0;
};

struct BoundaryDirection;

struct ProductDirection {
  std::vector<double> weights;
  std::vector<BoundaryDirection> parts;
};

/// A point of the visual boundary of a model space: a unit vector for
/// Euclidean and hyperbolic space (for the hyperboloid, the spatial part of the
/// null vector (1, u)), an infinite ray of a metric tree, or a weighted tuple
/// of factor directions with weights of unit l2 norm.
struct BoundaryDirection {
  std::variant<Vector, TreeRay, ProductDirection> data;

  BoundaryDirection() = default;
  BoundaryDirection(Vector u) : data(std::move(u)) {}  // NOLINT(google-explicit-constructor)
  BoundaryDirection(TreeRay r) : data(r) {}            // NOLINT(google-explicit-constructor)
  BoundaryDirection(ProductDirection p) : data(std::move(p)) {}  // NOLINT(google-explicit-constructor)

  const Vector& vector() const;
  const TreeRay& ray() const;
  const ProductDirection& product() const;
};

enum class SpaceKind { Euclidean, Sphere, Hyperbolic, MetricTree, Product, TruncatedHilbertBox };

std::string to_string(SpaceKind kind);

class Space;
using SpacePtr = std::shared_ptr<const Space>;

/// Geodesic metric space interface. Implementations are immutable and all
/// methods are safe to call concurrently.
class Space {
 public:
  virtual ~Space() = default;

  virtual SpaceKind kind() const = 0;
  /// Topological dimension (sum over factors for products, 1 for trees).
  virtual std::size_t dimension() const = 0;
  virtual std::string describe() const = 0;
  /// True for spaces of non-positive curvature.
  virtual bool is_cat0() const = 0;
  /// Euclidean space or the truncated Hilbert box (straight-line geodesics).
  bool is_euclidean_type() const {
    return kind() == SpaceKind::Euclidean || kind() == SpaceKind::TruncatedHilbertBox;
  }

  /// Throws UsageError unless `x` satisfies this space's membership constraint.
  virtual void validate(const Point& x) const = 0;
  virtual double distance(const Point& x, const Point& y) const = 0;
  /// Point at fraction t of the geodesic from x to y.
  virtual Point geodesic_point(const Point& x, const Point& y, double t) const = 0;

  /// Point at distance r from p on the geodesic ray from p through q. Spaces
  /// without geodesic extension stop where the ray leaves the space, so the
  /// result may be closer than r.
  virtual Point radial_point(const Point& p, const Point& q, double r) const = 0;

  /// Dimension of the space of directions at p when it is a round sphere of
  /// a tangent space (manifold-like spaces); nullopt otherwise.
  virtual std::optional<std::size_t> chart_dimension(const Point& p) const;
  /// Point reached from p along the tangent unit vector `direction` (expressed
  /// in the chart basis at p) after length r, clamped at the space boundary.
  virtual Point chart_exp(const Point& p, const Vector& direction, double r) const;

  /// Points at distance r from p (or the farthest reachable point in that
  /// direction when the space ends earlier). Manifold-like spaces use `count`
  /// deterministic directions; trees enumerate every branch exactly.
  virtual std::vector<Point> probe_sphere(const Point& p, double r, std::size_t count) const;

  /// Random point within roughly `scale` of the space's reference point.
  virtual Point sample(std::mt19937_64& rng, double scale) const = 0;
  /// Reference point (origin, north pole, hyperboloid apex, tree root).
  virtual Point origin() const = 0;

  virtual bool supports_boundary() const { return false; }
  virtual void validate(const BoundaryDirection& u) const;
  /// Point at distance t along the geodesic ray from x asymptotic to u.
  virtual Point ray_point(const Point& x, const BoundaryDirection& u, double t) const;
  /// Busemann function of u normalised to vanish at `base`.
  virtual double busemann(const BoundaryDirection& u, const Point& base, const Point& x) const;

  /// Throws UsageError when x and y do not both belong to this space.
  void require_same(const Point& x, const Point& y) const {
    validate(x);
    validate(y);
  }
};

SpacePtr make_euclidean(std::size_t d);
SpacePtr make_sphere(std::size_t d);
SpacePtr make_hyperbolic(std::size_t d);
SpacePtr make_hilbert_box(std::size_t d);
SpacePtr make_product(std::vector<SpacePtr> factors);

/// Deterministic set of unit vectors in R^dim. For dim 2 the directions are
/// equally spaced; for dim >= 3 they are the 2*dim axis directions followed by
/// a fixed quasi-random fill.
std::vector<Vector> unit_directions(std::size_t dim, std::size_t count);

/// Euclidean comparison defect d(m', z') - d(m, z) where m is the point at
/// fraction t of [x, y] and primes denote the comparison triangle in the
/// plane. Non-negative (up to rounding) in CAT(0) spaces.
double comparison_check(const Space& space, const Point& x, const Point& y, const Point& z,
                        double t);

/// Angle in [0, pi] between two nonzero vectors.
double angle_between(const Vector& a, const Vector& b);

}  // namespace hadamard
