#include "hadamard/error.hpp"
#include "hadamard/space.hpp"
#include "hadamard/tolerance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hadamard {
namespace {

class EuclideanSpace : public Space {
 public:
  explicit EuclideanSpace(std::size_t d) : d_(d) {
    if (d == 0) throw UsageError("euclidean dimension must be positive");
  }

  SpaceKind kind() const override { return SpaceKind::Euclidean; }
  std::size_t dimension() const override { return d_; }
  std::string describe() const override { return "euclidean:" + std::to_string(d_); }
  bool is_cat0() const override { return true; }

  void validate(const Point& x) const override {
    if (!x.has_coords() || static_cast<std::size_t>(x.coords().size()) != d_)
      throw UsageError("point does not belong to " + describe());
    if (!x.coords().allFinite()) throw UsageError("non-finite coordinates");
  }

  double distance(const Point& x, const Point& y) const override {
    return (x.coords() - y.coords()).norm();
  }

  Point geodesic_point(const Point& x, const Point& y, double t) const override {
    if (t <= 0.0) return x;
    if (t >= 1.0) return y;
    return Vector(x.coords() + t * (y.coords() - x.coords()));
  }

  Point radial_point(const Point& p, const Point& q, double r) const override {
    const Vector u = q.coords() - p.coords();
    const double n = u.norm();
    if (n == 0.0) return p;
    return chart_exp(p, u / n, r);
  }

  std::optional<std::size_t> chart_dimension(const Point& /*p*/) const override { return d_; }

  Point chart_exp(const Point& p, const Vector& direction, double r) const override {
    return Vector(p.coords() + r * direction);
  }

  Point sample(std::mt19937_64& rng, double scale) const override {
    std::uniform_real_distribution<double> u(-scale, scale);
    Vector x(static_cast<Eigen::Index>(d_));
    for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = u(rng);
    return x;
  }

  Point origin() const override { return Vector(Vector::Zero(static_cast<Eigen::Index>(d_))); }

  bool supports_boundary() const override { return true; }

  void validate(const BoundaryDirection& u) const override {
    const auto* v = std::get_if<Vector>(&u.data);
    if (v == nullptr || static_cast<std::size_t>(v->size()) != d_)
      throw UsageError("boundary direction does not belong to " + describe());
    if (std::abs(v->norm() - 1.0) > 1e-12) throw UsageError("boundary direction is not a unit vector");
  }

  Point ray_point(const Point& x, const BoundaryDirection& u, double t) const override {
    return Vector(x.coords() + t * u.vector());
  }

  double busemann(const BoundaryDirection& u, const Point& base, const Point& x) const override {
    return -(x.coords() - base.coords()).dot(u.vector());
  }

 protected:
  std::size_t d_;
};

/// {a in R^d : |a_i| <= i} (1-based) with the induced metric.
class HilbertBoxSpace final : public EuclideanSpace {
 public:
  explicit HilbertBoxSpace(std::size_t d) : EuclideanSpace(d) {}

  SpaceKind kind() const override { return SpaceKind::TruncatedHilbertBox; }
  std::string describe() const override { return "hilbert_box:" + std::to_string(d_); }

  void validate(const Point& x) const override {
    EuclideanSpace::validate(x);
    const double tol = default_tolerances().membership;
    const Vector& a = x.coords();
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      if (std::abs(a(i)) > bound(i) + tol) throw UsageError("point leaves the truncated Hilbert box");
    }
  }

  Point chart_exp(const Point& p, const Vector& direction, double r) const override {
    const Vector& x = p.coords();
    double s = r;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      const double ui = direction(i);
      if (ui > 0.0) s = std::min(s, (bound(i) - x(i)) / ui);
      if (ui < 0.0) s = std::min(s, (-bound(i) - x(i)) / ui);
    }
    s = std::max(s, 0.0);
    Vector y = x + s * direction;
    for (Eigen::Index i = 0; i < y.size(); ++i) y(i) = std::clamp(y(i), -bound(i), bound(i));
    return y;
  }

  Point sample(std::mt19937_64& rng, double scale) const override {
    Vector x(static_cast<Eigen::Index>(d_));
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      const double b = std::min(bound(i), scale);
      x(i) = std::uniform_real_distribution<double>(-b, b)(rng);
    }
    return x;
  }

  // Bounded: the ideal boundary is empty.
  bool supports_boundary() const override { return false; }
  void validate(const BoundaryDirection& /*u*/) const override {
    throw CapabilityError("the truncated Hilbert box is bounded and has no boundary directions");
  }
  Point ray_point(const Point& x, const BoundaryDirection& u, double t) const override {
    return Space::ray_point(x, u, t);
  }
  double busemann(const BoundaryDirection& u, const Point& base, const Point& x) const override {
    return Space::busemann(u, base, x);
  }

 private:
  static double bound(Eigen::Index i) { return static_cast<double>(i + 1); }
};

}  // namespace

SpacePtr make_euclidean(std::size_t d) { return std::make_shared<EuclideanSpace>(d); }
SpacePtr make_hilbert_box(std::size_t d) { return std::make_shared<HilbertBoxSpace>(d); }

}  // namespace hadamard
