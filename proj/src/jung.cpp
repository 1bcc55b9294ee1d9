#include "hadamard/jung.hpp"

#include "hadamard/error.hpp"
#include "hadamard/tolerance.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <set>

namespace hadamard {

double jung_bound(int n) {
  if (n < 0) throw UsageError("dimension must be non-negative");
  if (n == 0) return 0.0;
  return std::sqrt(static_cast<double>(n) / (2.0 * (n + 1)));
}

JungReport jung_check(const Space& space, const std::vector<Point>& points, int n) {
  if (points.size() < 2) throw UsageError("Jung check needs at least two points");
  JungReport rep;
  rep.n = n;
  rep.diameter = diameter(space, points);
  const auto circ = circumcenter(space, points);
  rep.radius = circ.radius;
  rep.support_size = circ.support.size();
  rep.ratio = rep.diameter > 0.0 ? rep.radius / rep.diameter : 0.0;
  rep.bound = jung_bound(n);
  rep.slack = rep.bound - rep.ratio;
  rep.holds = rep.slack >= -default_tolerances().jung_slack;
  return rep;
}

HellyReport helly_subset_check(const Space& space, const std::vector<Point>& points, int n, double r) {
  if (points.empty()) throw UsageError("Helly check needs points");
  if (points.size() > 12) throw UsageError("exhaustive Helly check is limited to 12 points");
  if (n < 1) throw UsageError("dimension must be positive");
  HellyReport rep;
  const std::size_t m = points.size();
  const auto limit = static_cast<int>(std::min<std::size_t>(m, static_cast<std::size_t>(n) + 1));
  for (std::uint32_t mask = 1; mask < (1U << m); ++mask) {
    if (__builtin_popcount(mask) > limit) continue;
    std::vector<Point> sub;
    for (std::size_t i = 0; i < m; ++i) {
      if (mask & (1U << i)) sub.push_back(points[i]);
    }
    rep.max_subset_radius = std::max(rep.max_subset_radius, circumcenter(space, sub).radius);
    ++rep.subsets_checked;
  }
  rep.whole_radius = circumcenter(space, points).radius;
  rep.premise = rep.max_subset_radius <= r;
  rep.conclusion = rep.whole_radius <= r + default_tolerances().helly;
  rep.consistent = !rep.premise || rep.conclusion;
  return rep;
}

DimensionEstimate dimension_lower_bound(const Space& space, const std::vector<Point>& points) {
  if (points.size() < 2) throw UsageError("dimension estimate needs at least two points");
  DimensionEstimate est;
  const double d = diameter(space, points);
  est.ratio = d > 0.0 ? circumcenter(space, points).radius / d : 0.0;
  if (est.ratio > 1.0 / std::numbers::sqrt2 - 1e-9) {
    est.exceeds_all_bounds = true;
    return est;
  }
  int n = 1;
  while (est.ratio > jung_bound(n) + 1e-9) ++n;
  est.n = n;
  return est;
}

std::vector<JungReport> telescopic_jung_scan(const Space& space, const std::vector<Point>& points, int n,
                                             double delta, double min_diameter) {
  if (!(delta > 0.0) || !(min_diameter > 0.0)) throw UsageError("delta and min_diameter must be positive");
  std::vector<JungReport> out;
  std::set<std::vector<std::size_t>> seen;
  for (std::size_t seed = 0; seed < points.size(); ++seed) {
    std::vector<double> dist(points.size());
    for (std::size_t j = 0; j < points.size(); ++j) dist[j] = space.distance(points[seed], points[j]);
    for (double rho = min_diameter;; rho *= 2.0) {
      std::vector<std::size_t> idx;
      for (std::size_t j = 0; j < points.size(); ++j) {
        if (dist[j] <= rho) idx.push_back(j);
      }
      if (idx.size() >= 2 && seen.insert(idx).second) {
        std::vector<Point> sub;
        for (std::size_t j : idx) sub.push_back(points[j]);
        if (diameter(space, sub) > min_diameter) {
          auto rep = jung_check(space, sub, n);
          rep.scale_bucket = rho;
          rep.holds = rep.ratio <= delta + rep.bound;
          out.push_back(rep);
        }
      }
      if (idx.size() == points.size()) break;
    }
  }
  return out;
}

double k_n(int n) {
  if (n < 1) throw UsageError("dimension must be positive");
  return std::acos(-1.0 / (n + 1));
}

double s_n(int n, double r) {
  if (n < 1) throw UsageError("dimension must be positive");
  if (!(r > 0.0)) throw UsageError("radius must be positive");
  if (r >= std::numbers::pi / 2) throw NonConvexRegimeError("s_n needs r < pi/2");
  // Vertices cos r c + sin r u_i with <u_i, u_j> = -1/n give
  // sin^2(d/2) = sin^2 r (n + 1) / (2n).
  return 2.0 * std::asin(std::min(1.0, std::sin(r) * std::sqrt((n + 1.0) / (2.0 * n))));
}

std::vector<Vector> regular_simplex(int n) {
  if (n < 1) throw UsageError("dimension must be positive");
  const Eigen::Index m = n + 1;
  // Centred standard basis of R^{n+1}, written in an orthonormal basis of
  // the hyperplane orthogonal to (1, ..., 1).
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(m, m);
  a.rowwise() -= a.colwise().mean();
  Eigen::MatrixXd basis(m, m);
  basis.col(0) = Vector::Ones(m) / std::sqrt(static_cast<double>(m));
  basis.rightCols(m - 1) = Eigen::MatrixXd::Identity(m, m).rightCols(m - 1);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(basis);
  const Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd h = q.rightCols(m - 1);
  std::vector<Vector> out;
  for (Eigen::Index i = 0; i < m; ++i) out.emplace_back(h.transpose() * a.col(i) / std::numbers::sqrt2);
  return out;
}

double r_n(int n, double d) {
  if (n < 1) throw UsageError("dimension must be positive");
  if (!(d > 0.0)) throw UsageError("diameter must be positive");
  const auto h = make_hyperbolic(static_cast<std::size_t>(n));
  auto dirs = regular_simplex(n);
  for (auto& u : dirs) u /= u.norm();
  auto vertex = [&](double rho, const Vector& u) {
    Vector x(n + 1);
    x(0) = std::cosh(rho);
    x.tail(n) = std::sinh(rho) * u;
    return Point(x);
  };
  auto edge = [&](double rho) { return h->distance(vertex(rho, dirs[0]), vertex(rho, dirs[1])); };
  double lo = 0.0;
  double hi = d;
  while (edge(hi) < d) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (edge(mid) < d ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double r_n_closed_form(int n, double d) {
  const double c = 2.0 * std::sinh(d / 2) * std::sinh(d / 2);  // cosh d - 1
  return std::asinh(std::sqrt(c * n / (n + 1.0)));
}

}  // namespace hadamard
