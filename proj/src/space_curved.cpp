#include "hadamard/error.hpp"
#include "hadamard/space.hpp"
#include "hadamard/tolerance.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hadamard {
namespace {

Vector axis(Eigen::Index n, Eigen::Index i) {
  Vector e = Vector::Zero(n);
  e(i) = 1.0;
  return e;
}

/// Unit sphere S^d in R^{d+1}; the reference point is e_0.
class SphereSpace final : public Space {
 public:
  explicit SphereSpace(std::size_t d) : d_(d) {
    if (d == 0) throw UsageError("sphere dimension must be positive");
  }

  SpaceKind kind() const override { return SpaceKind::Sphere; }
  std::size_t dimension() const override { return d_; }
  std::string describe() const override { return "sphere:" + std::to_string(d_); }
  bool is_cat0() const override { return false; }

  void validate(const Point& x) const override {
    if (!x.has_coords() || static_cast<std::size_t>(x.coords().size()) != d_ + 1)
      throw UsageError("point does not belong to " + describe());
    if (!x.coords().allFinite()) throw UsageError("non-finite coordinates");
    if (std::abs(x.coords().squaredNorm() - 1.0) > 1e3 * default_tolerances().membership)
      throw UsageError("point is not on the unit sphere");
  }

  double distance(const Point& x, const Point& y) const override {
    const Vector& a = x.coords();
    const Vector& b = y.coords();
    return 2.0 * std::atan2((a - b).norm(), (a + b).norm());
  }

  Point geodesic_point(const Point& x, const Point& y, double t) const override {
    if (t <= 0.0) return x;
    if (t >= 1.0) return y;
    const double theta = distance(x, y);
    if (theta >= std::numbers::pi - 1e-12)
      throw NonUniqueGeodesicError("antipodal points have no unique geodesic");
    const Vector& a = x.coords();
    const Vector& b = y.coords();
    Vector m;
    if (theta < 1e-12) {
      m = (1.0 - t) * a + t * b;
    } else {
      const double s = std::sin(theta);
      m = (std::sin((1.0 - t) * theta) / s) * a + (std::sin(t * theta) / s) * b;
    }
    return Vector(m / m.norm());
  }

  Point radial_point(const Point& p, const Point& q, double r) const override {
    const Vector& a = p.coords();
    Vector w = q.coords() - q.coords().dot(a) * a;
    const double n = w.norm();
    if (n < 1e-15) return p;
    Vector m = std::cos(r) * a + std::sin(r) * (w / n);
    return Vector(m / m.norm());
  }

  std::optional<std::size_t> chart_dimension(const Point& /*p*/) const override { return d_; }

  Point chart_exp(const Point& p, const Vector& direction, double r) const override {
    const Vector& a = p.coords();
    const auto basis = tangent_basis(a);
    Vector v = Vector::Zero(a.size());
    for (std::size_t i = 0; i < basis.size(); ++i) v += direction(static_cast<Eigen::Index>(i)) * basis[i];
    Vector m = std::cos(r) * a + std::sin(r) * v;
    return Vector(m / m.norm());
  }

  Point sample(std::mt19937_64& rng, double scale) const override {
    std::normal_distribution<double> normal;
    Vector u(static_cast<Eigen::Index>(d_));
    do {
      for (Eigen::Index i = 0; i < u.size(); ++i) u(i) = normal(rng);
    } while (u.norm() < 1e-9);
    u /= u.norm();
    const double cap = std::min(scale, std::numbers::pi * (1.0 - 1e-6));
    const double r = std::uniform_real_distribution<double>(0.0, cap)(rng);
    return chart_exp(origin(), u, r);
  }

  Point origin() const override { return Vector(axis(static_cast<Eigen::Index>(d_ + 1), 0)); }

 private:
  // Orthonormal basis of the tangent space at a, built by Gram-Schmidt from
  // the coordinate axes with the axis most aligned to a left out.
  static std::vector<Vector> tangent_basis(const Vector& a) {
    const Eigen::Index n = a.size();
    Eigen::Index skip = 0;
    a.cwiseAbs().maxCoeff(&skip);
    std::vector<Vector> basis;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i == skip) continue;
      Vector v = axis(n, i);
      v -= v.dot(a) * a;
      for (const auto& b : basis) v -= v.dot(b) * b;
      basis.push_back(v / v.norm());
    }
    return basis;
  }

  std::size_t d_;
};

double minkowski(const Vector& x, const Vector& y) {
  return -x(0) * y(0) + x.tail(x.size() - 1).dot(y.tail(y.size() - 1));
}

// Lift the spatial part back onto the upper sheet.
Vector lift(Vector x) {
  x(0) = std::sqrt(1.0 + x.tail(x.size() - 1).squaredNorm());
  return x;
}

/// Hyperboloid model {x : <x,x>_M = -1, x_0 > 0} in R^{d+1}.
class HyperbolicSpace final : public Space {
 public:
  explicit HyperbolicSpace(std::size_t d) : d_(d) {
    if (d == 0) throw UsageError("hyperbolic dimension must be positive");
  }

  SpaceKind kind() const override { return SpaceKind::Hyperbolic; }
  std::size_t dimension() const override { return d_; }
  std::string describe() const override { return "hyperbolic:" + std::to_string(d_); }
  bool is_cat0() const override { return true; }

  void validate(const Point& x) const override {
    if (!x.has_coords() || static_cast<std::size_t>(x.coords().size()) != d_ + 1)
      throw UsageError("point does not belong to " + describe());
    const Vector& a = x.coords();
    if (!a.allFinite()) throw UsageError("non-finite coordinates");
    // Rounding in <x,x>_M grows with x_0^2, so the check is relative.
    const double tol = 1e3 * default_tolerances().membership * (1.0 + a(0) * a(0));
    if (a(0) <= 0.0 || std::abs(minkowski(a, a) + 1.0) > tol)
      throw UsageError("point is not on the upper hyperboloid sheet");
  }

  double distance(const Point& x, const Point& y) const override {
    const Vector w = x.coords() - y.coords();
    const double q = std::max(0.0, minkowski(w, w));
    return 2.0 * std::asinh(std::sqrt(q) / 2.0);
  }

  Point geodesic_point(const Point& x, const Point& y, double t) const override {
    if (t <= 0.0) return x;
    if (t >= 1.0) return y;
    const double d = distance(x, y);
    const Vector& a = x.coords();
    const Vector& b = y.coords();
    if (d < 1e-12) return lift((1.0 - t) * a + t * b);
    const double s = std::sinh(d);
    return lift((std::sinh((1.0 - t) * d) / s) * a + (std::sinh(t * d) / s) * b);
  }

  Point radial_point(const Point& p, const Point& q, double r) const override {
    const Vector& a = p.coords();
    const Vector w = q.coords() + minkowski(a, q.coords()) * a;
    const double n2 = minkowski(w, w);
    if (n2 <= 1e-30) return p;
    return lift(std::cosh(r) * a + std::sinh(r) * (w / std::sqrt(n2)));
  }

  std::optional<std::size_t> chart_dimension(const Point& /*p*/) const override { return d_; }

  Point chart_exp(const Point& p, const Vector& direction, double r) const override {
    const Vector& a = p.coords();
    const auto basis = tangent_basis(a);
    Vector v = Vector::Zero(a.size());
    for (std::size_t i = 0; i < basis.size(); ++i) v += direction(static_cast<Eigen::Index>(i)) * basis[i];
    return lift(std::cosh(r) * a + std::sinh(r) * v);
  }

  Point sample(std::mt19937_64& rng, double scale) const override {
    std::normal_distribution<double> normal;
    Vector u(static_cast<Eigen::Index>(d_));
    do {
      for (Eigen::Index i = 0; i < u.size(); ++i) u(i) = normal(rng);
    } while (u.norm() < 1e-9);
    u /= u.norm();
    const double r = std::uniform_real_distribution<double>(0.0, scale)(rng);
    return chart_exp(origin(), u, r);
  }

  Point origin() const override { return Vector(axis(static_cast<Eigen::Index>(d_ + 1), 0)); }

  bool supports_boundary() const override { return true; }

  void validate(const BoundaryDirection& u) const override {
    const auto* v = std::get_if<Vector>(&u.data);
    if (v == nullptr || static_cast<std::size_t>(v->size()) != d_)
      throw UsageError("boundary direction does not belong to " + describe());
    if (std::abs(v->norm() - 1.0) > 1e-12) throw UsageError("boundary direction is not a unit vector");
  }

  Point ray_point(const Point& x, const BoundaryDirection& u, double t) const override {
    const Vector& a = x.coords();
    const Vector xi = null_vector(u);
    const double c = -minkowski(a, xi);
    const Vector v = xi / c - a;
    return lift(std::cosh(t) * a + std::sinh(t) * v);
  }

  double busemann(const BoundaryDirection& u, const Point& base, const Point& x) const override {
    const Vector xi = null_vector(u);
    return std::log(-minkowski(x.coords(), xi)) - std::log(-minkowski(base.coords(), xi));
  }

 private:
  Vector null_vector(const BoundaryDirection& u) const {
    Vector xi(static_cast<Eigen::Index>(d_ + 1));
    xi(0) = 1.0;
    xi.tail(static_cast<Eigen::Index>(d_)) = u.vector();
    return xi;
  }

  // Minkowski-orthonormal basis of the tangent space at a.
  static std::vector<Vector> tangent_basis(const Vector& a) {
    const Eigen::Index n = a.size();
    std::vector<Vector> basis;
    for (Eigen::Index i = 1; i < n; ++i) {
      Vector v = axis(n, i);
      v += minkowski(a, v) * a;
      for (const auto& b : basis) v -= minkowski(v, b) * b;
      basis.push_back(v / std::sqrt(minkowski(v, v)));
    }
    return basis;
  }

  std::size_t d_;
};

}  // namespace

SpacePtr make_sphere(std::size_t d) { return std::make_shared<SphereSpace>(d); }
SpacePtr make_hyperbolic(std::size_t d) { return std::make_shared<HyperbolicSpace>(d); }

}  // namespace hadamard
