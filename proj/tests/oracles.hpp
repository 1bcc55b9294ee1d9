#pragma once

// Independent reference computations for tests. Nothing here calls the
// library's algorithms; only plain Eigen and the standard library.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <queue>
#include <utility>
#include <vector>

namespace oracle {

using Vec = Eigen::VectorXd;

struct Ball {
  Vec center;
  double radius = 0.0;
};

// Smallest ball with every point of `boundary` on its sphere and its centre in
// their affine hull. Empty when the points are affinely dependent.
inline std::optional<Ball> boundary_ball(const std::vector<Vec>& boundary) {
  const auto m = static_cast<Eigen::Index>(boundary.size());
  const Vec& p0 = boundary.front();
  if (m == 1) return Ball{p0, 0.0};
  // c = p0 + A lambda, with 2 (p_i - p0) . (c - p0) = |p_i - p0|^2.
  Eigen::MatrixXd a(p0.size(), m - 1);
  for (Eigen::Index i = 1; i < m; ++i) a.col(i - 1) = boundary[static_cast<std::size_t>(i)] - p0;
  const Eigen::MatrixXd g = 2.0 * a.transpose() * a;
  Vec rhs(m - 1);
  for (Eigen::Index i = 0; i < m - 1; ++i) rhs(i) = a.col(i).squaredNorm();
  Eigen::FullPivLU<Eigen::MatrixXd> lu(g);
  if (lu.rank() < m - 1) return std::nullopt;
  const Vec c = p0 + a * lu.solve(rhs);
  return Ball{c, (c - p0).norm()};
}

// Minimal enclosing ball by exhaustion over support sets of size <= d + 1.
// Exact up to rounding; meant for small inputs.
inline Ball minimal_ball(const std::vector<Vec>& pts) {
  const std::size_t n = pts.size();
  const std::size_t d = static_cast<std::size_t>(pts.front().size());
  Ball best{pts.front(), std::numeric_limits<double>::infinity()};
  std::vector<std::size_t> idx;
  auto encloses = [&](const Ball& b) {
    for (const auto& p : pts)
      if ((p - b.center).norm() > b.radius * (1.0 + 1e-12) + 1e-12) return false;
    return true;
  };
  auto recurse = [&](auto&& self, std::size_t start) -> void {
    if (!idx.empty()) {
      std::vector<Vec> sub;
      for (auto i : idx) sub.push_back(pts[i]);
      if (auto b = boundary_ball(sub); b && b->radius < best.radius && encloses(*b)) best = *b;
    }
    if (idx.size() == d + 1) return;
    for (std::size_t i = start; i < n; ++i) {
      idx.push_back(i);
      self(self, i + 1);
      idx.pop_back();
    }
  };
  recurse(recurse, 0);
  return best;
}

// Metric tree given by weighted edges between vertices; distances between
// points on edges by Dijkstra on the tree with both points inserted.
struct Tree {
  std::size_t vertices = 0;
  struct Edge {
    std::size_t a, b;
    double length;
  };
  std::vector<Edge> edges;
};

struct EdgePoint {
  std::size_t edge;
  double offset;  // from edges[edge].a
};

inline double tree_distance(const Tree& t, EdgePoint x, EdgePoint y) {
  if (x.edge == y.edge) return std::abs(x.offset - y.offset);
  const std::size_t nx = t.vertices, ny = t.vertices + 1, n = t.vertices + 2;
  std::vector<std::vector<std::pair<std::size_t, double>>> adj(n);
  auto link = [&](std::size_t u, std::size_t v, double w) {
    adj[u].push_back({v, w});
    adj[v].push_back({u, w});
  };
  for (std::size_t e = 0; e < t.edges.size(); ++e) {
    const auto& ed = t.edges[e];
    if (e == x.edge) {
      link(ed.a, nx, x.offset);
      link(nx, ed.b, ed.length - x.offset);
    } else if (e == y.edge) {
      link(ed.a, ny, y.offset);
      link(ny, ed.b, ed.length - y.offset);
    } else {
      link(ed.a, ed.b, ed.length);
    }
  }
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> q;
  dist[nx] = 0.0;
  q.push({0.0, nx});
  while (!q.empty()) {
    const auto [du, u] = q.top();
    q.pop();
    if (du > dist[u]) continue;
    for (const auto& [v, w] : adj[u])
      if (du + w < dist[v]) {
        dist[v] = du + w;
        q.push({dist[v], v});
      }
  }
  return dist[ny];
}

// Closed forms.
inline double jung_ratio(int n) { return std::sqrt(n / (2.0 * (n + 1.0))); }

// Busemann function of the unit direction u in R^d vanishing at 0.
inline double euclidean_busemann(const Vec& u, const Vec& x) { return -u.dot(x); }

inline double sphere_distance(const Vec& x, const Vec& y) {
  return 2.0 * std::asin(std::min(1.0, (x - y).norm() / 2.0));
}

inline double hyperboloid_distance(const Vec& x, const Vec& y) {
  double b = x(0) * y(0);
  for (Eigen::Index i = 1; i < x.size(); ++i) b -= x(i) * y(i);
  return std::acosh(std::max(1.0, b));
}

// Nearest point of the box [lo, hi] (coordinate clamp).
inline Vec box_projection(const Vec& x, const Vec& lo, const Vec& hi) { return x.cwiseMax(lo).cwiseMin(hi); }

}  // namespace oracle
