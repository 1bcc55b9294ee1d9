#include "hadamard/circumcenter.hpp"

#include "hadamard/error.hpp"
#include "hadamard/product.hpp"
#include "hadamard/tolerance.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace hadamard {
namespace {

struct Ball {
  Vector center;
  double radius = 0.0;
  std::vector<std::size_t> members;  // indices into the full point list
};

double minkowski(const Vector& x, const Vector& y) {
  return -x(0) * y(0) + x.tail(x.size() - 1).dot(y.tail(y.size() - 1));
}

// Ball through every point of T with centre in the convex hull of T, or
// nullopt if T is degenerate or the centre falls outside the hull.
std::optional<Ball> ball_through(const Space& space, const std::vector<Vector>& pts,
                                 const std::vector<std::size_t>& t) {
  const auto k = static_cast<Eigen::Index>(t.size());
  Ball b;
  b.members = t;
  if (k == 1) {
    b.center = pts[t[0]];
    return b;
  }
  if (space.is_euclidean_type()) {
    const Vector& p0 = pts[t[0]];
    Eigen::MatrixXd q(k - 1, p0.size());
    for (Eigen::Index j = 1; j < k; ++j) q.row(j - 1) = (pts[t[static_cast<std::size_t>(j)]] - p0).transpose();
    const Eigen::MatrixXd g = 2.0 * q * q.transpose();
    const Vector rhs = q.rowwise().squaredNorm();
    Eigen::FullPivLU<Eigen::MatrixXd> lu(g);
    if (!lu.isInvertible()) return std::nullopt;
    const Vector mu = lu.solve(rhs);
    if (mu.minCoeff() < -1e-12 || mu.sum() > 1.0 + 1e-12) return std::nullopt;
    b.center = p0 + q.transpose() * mu;
    b.radius = (b.center - p0).norm();
    return b;
  }
  // Sphere and hyperboloid: the centre is a positive combination of the
  // points with equal inner products against each of them.
  const bool sphere = space.kind() == SpaceKind::Sphere;
  Eigen::MatrixXd g(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      const Vector& a = pts[t[static_cast<std::size_t>(i)]];
      const Vector& c = pts[t[static_cast<std::size_t>(j)]];
      g(i, j) = sphere ? a.dot(c) : minkowski(a, c);
    }
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(g);
  if (!lu.isInvertible()) return std::nullopt;
  Vector w = lu.solve(Vector::Ones(k));
  const double s = w.sum();
  if (sphere) {
    if (!(s > 0.0)) return std::nullopt;  // radius would reach pi/2
  } else {
    if (!(s < 0.0)) return std::nullopt;
    w = -w;
  }
  if (w.minCoeff() < -1e-12 * w.cwiseAbs().maxCoeff()) return std::nullopt;
  Vector x = Vector::Zero(pts[t[0]].size());
  for (Eigen::Index j = 0; j < k; ++j) x += w(j) * pts[t[static_cast<std::size_t>(j)]];
  x /= std::sqrt(std::abs(s));
  if (sphere) {
    x /= x.norm();
  } else {
    x(0) = std::sqrt(1.0 + x.tail(x.size() - 1).squaredNorm());
  }
  b.center = x;
  b.radius = space.distance(Point(x), Point(pts[t[0]]));
  return b;
}

// Smallest ball enclosing the points indexed by s, by enumerating subsets of
// size <= max_support.
std::optional<Ball> small_enclosing_ball(const Space& space, const std::vector<Vector>& pts,
                                         const std::vector<std::size_t>& s, std::size_t max_support) {
  std::optional<Ball> best;
  const std::size_t n = s.size();
  for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) > max_support) continue;
    std::vector<std::size_t> t;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1U << i)) t.push_back(s[i]);
    }
    auto b = ball_through(space, pts, t);
    if (!b || (best && b->radius >= best->radius)) continue;
    const Point c(b->center);
    bool encloses = true;
    for (std::size_t i : s) {
      if (space.distance(c, Point(pts[i])) > b->radius * (1.0 + 1e-12) + 1e-14) {
        encloses = false;
        break;
      }
    }
    if (encloses) best = std::move(b);
  }
  return best;
}

std::size_t farthest(const Space& space, const Point& x, const std::vector<Point>& points, double* dist) {
  std::size_t j = 0;
  double d1 = -1.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double d = space.distance(x, points[i]);
    if (d > d1) {
      d1 = d;
      j = i;
    }
  }
  if (dist != nullptr) *dist = d1;
  return j;
}

// Farthest-point geodesic subgradient descent on g(x) = max_i d(x, p_i).
std::pair<Point, int> descend(const Space& space, const std::vector<Point>& points, Point x, int iterations) {
  Point best = x;
  double best_g = std::numeric_limits<double>::infinity();
  int k = 1;
  for (; k <= iterations; ++k) {
    std::vector<double> d(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) d[i] = space.distance(x, points[i]);
    const auto j = static_cast<std::size_t>(std::max_element(d.begin(), d.end()) - d.begin());
    const double d1 = d[j];
    if (d1 < best_g) {
      best_g = d1;
      best = x;
    }
    if (d1 == 0.0) break;
    double d2 = -1.0;
    bool unique = true;
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (i == j) continue;
      if (d[i] >= d1 - 1e-12 * (1.0 + d1)) unique = false;
      d2 = std::max(d2, d[i]);
    }
    const double step = unique ? 0.5 * (d1 - std::max(d2, 0.0)) : 0.5 * d1 / k;
    x = space.geodesic_point(x, points[j], std::min(step, d1) / d1);
  }
  return {best, k};
}

CircumResult finish(const Space& space, const std::vector<Point>& points, Point center, int iterations, bool exact) {
  CircumResult res;
  res.center = std::move(center);
  res.iterations = iterations;
  res.exact = exact;
  double r = 0.0;
  std::vector<double> d(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    d[i] = space.distance(res.center, points[i]);
    r = std::max(r, d[i]);
  }
  res.radius = r;
  const double tol = default_tolerances().circum_support;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (d[i] >= r - tol) res.support.push_back(i);
  }
  res.residual = 0.0;
  return res;
}

CircumResult solve_exact(const Space& space, const std::vector<Point>& points, const Point& rough, int iterations) {
  std::vector<Vector> pts;
  for (const auto& p : points) pts.push_back(p.coords());
  const std::size_t max_support = space.dimension() + 1;
  std::vector<std::size_t> s{farthest(space, rough, points, nullptr)};
  const int cap = 10 * static_cast<int>(points.size()) + 100;
  for (int it = 0; it < cap; ++it) {
    auto ball = small_enclosing_ball(space, pts, s, max_support);
    if (!ball) {
      if (space.kind() == SpaceKind::Sphere)
        throw NonConvexRegimeError("spherical point set has circumradius >= pi/2");
      throw NumericalError("support-set solve found no enclosing ball");
    }
    const Point c(ball->center);
    double dmax = 0.0;
    const std::size_t f = farthest(space, c, points, &dmax);
    if (dmax <= ball->radius * (1.0 + 1e-12) + 1e-14) {
      auto res = finish(space, points, c, iterations + it + 1, true);
      res.residual = dmax - ball->radius;
      return res;
    }
    s = ball->members;
    s.push_back(f);
  }
  throw NumericalError("support-set solve did not terminate");
}

}  // namespace

double diameter(const Space& space, const std::vector<Point>& points) {
  double d = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) d = std::max(d, space.distance(points[i], points[j]));
  }
  return d;
}

CircumResult circumcenter(const Space& space, const std::vector<Point>& points, const CircumOptions& options) {
  if (points.empty()) throw UsageError("circumcenter of an empty set");
  for (const auto& p : points) space.validate(p);
  if (points.size() == 1) return finish(space, points, points[0], 0, true);

  if (space.kind() == SpaceKind::MetricTree) {
    // Trees: the radius is half the diameter, centred on a diametral pair.
    std::size_t a = 0, b = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      for (std::size_t j = i + 1; j < points.size(); ++j) {
        const double d = space.distance(points[i], points[j]);
        if (d > best) {
          best = d;
          a = i;
          b = j;
        }
      }
    }
    return finish(space, points, space.geodesic_point(points[a], points[b], 0.5), 0, true);
  }

  if (space.kind() == SpaceKind::Product) {
    // Products of Euclidean factors are Euclidean after concatenation.
    const auto& prod = dynamic_cast<const ProductSpace&>(space);
    const bool flat = std::all_of(prod.factors().begin(), prod.factors().end(),
                                  [](const SpacePtr& f) { return f->kind() == SpaceKind::Euclidean; });
    if (flat) {
      const auto flat_space = make_euclidean(space.dimension());
      std::vector<Point> flat_pts;
      for (const auto& p : points) {
        Vector v(static_cast<Eigen::Index>(space.dimension()));
        Eigen::Index at = 0;
        for (const auto& part : p.parts()) {
          v.segment(at, part.coords().size()) = part.coords();
          at += part.coords().size();
        }
        flat_pts.emplace_back(v);
      }
      const auto r = circumcenter(*flat_space, flat_pts, {});
      std::vector<Point> parts;
      Eigen::Index at = 0;
      for (const auto& f : prod.factors()) {
        const auto k = static_cast<Eigen::Index>(f->dimension());
        parts.emplace_back(Vector(r.center.coords().segment(at, k)));
        at += k;
      }
      return finish(space, points, Point(std::move(parts)), r.iterations, true);
    }
  }

  Point start;
  if (options.start) {
    space.validate(*options.start);
    start = *options.start;
  } else {
    const std::size_t f = farthest(space, points[0], points, nullptr);
    start = space.geodesic_point(points[0], points[f], 0.5);
  }
  auto [rough, iters] = descend(space, points, start, options.descent_iterations);

  if (space.is_euclidean_type() || space.kind() == SpaceKind::Sphere || space.kind() == SpaceKind::Hyperbolic) {
    auto res = solve_exact(space, points, rough, iters);
    if (space.kind() == SpaceKind::Sphere && res.radius >= std::numbers::pi / 2)
      throw NonConvexRegimeError("spherical point set has circumradius >= pi/2");
    return res;
  }
  // Remaining spaces (products with curved or tree factors): refine by more
  // descent from the rough centre.
  auto [refined, more] = descend(space, points, rough, 20 * options.descent_iterations);
  auto res = finish(space, points, refined, iters + more, false);
  return res;
}

}  // namespace hadamard
