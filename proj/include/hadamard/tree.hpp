#pragma once

#include "hadamard/space.hpp"

#include <limits>
#include <optional>
#include <vector>

namespace hadamard {

struct TreeEdge {
  std::size_t from = 0;
  /// nullopt marks an infinite ray leaving `from`.
  std::optional<std::size_t> to;
  double length = std::numeric_limits<double>::infinity();

  bool is_ray() const { return !to.has_value(); }
};

/// Combinatorial description of a metric tree: vertices 0..vertex_count-1 and
/// edges with positive lengths. Infinite rays provide the ideal boundary.
struct MetricTree {
  std::size_t vertex_count = 1;
  std::vector<TreeEdge> edges;

  /// Star with one centre (vertex 0) and one leg per entry; an infinite length
  /// makes the leg a ray.
  static MetricTree star(const std::vector<double>& leg_lengths);
};

/// Metric tree with exact geodesics. Vertex-to-vertex distances and next hops
/// are precomputed at construction.
class TreeSpace final : public Space {
 public:
  explicit TreeSpace(MetricTree tree);

  SpaceKind kind() const override { return SpaceKind::MetricTree; }
  std::size_t dimension() const override { return 1; }
  std::string describe() const override;
  bool is_cat0() const override { return true; }

  void validate(const Point& x) const override;
  double distance(const Point& x, const Point& y) const override;
  Point geodesic_point(const Point& x, const Point& y, double t) const override;
  Point radial_point(const Point& p, const Point& q, double r) const override;
  std::vector<Point> probe_sphere(const Point& p, double r, std::size_t count) const override;
  Point sample(std::mt19937_64& rng, double scale) const override;
  Point origin() const override { return vertex_location(0); }

  bool supports_boundary() const override { return !rays_.empty(); }
  void validate(const BoundaryDirection& u) const override;
  Point ray_point(const Point& x, const BoundaryDirection& u, double t) const override;
  double busemann(const BoundaryDirection& u, const Point& base, const Point& x) const override;

  const MetricTree& tree() const { return tree_; }
  const std::vector<std::size_t>& rays() const { return rays_; }
  /// Canonical location of a vertex on one of its incident edges.
  Point vertex_location(std::size_t v) const;
  /// Vertex at this location, if it sits at an edge endpoint.
  std::optional<std::size_t> vertex_at(const TreeLocation& loc) const;
  double vertex_distance(std::size_t u, std::size_t v) const { return vdist_[u][v]; }
  double distance_to_vertex(const TreeLocation& loc, std::size_t v) const;
  /// Point at `offset` on `edge` (clamped to the edge).
  Point at(std::size_t edge, double offset) const;

 private:
  struct Hop {
    std::size_t vertex;
    std::size_t edge;
  };

  const TreeLocation& loc(const Point& x) const;
  // Exit vertices of the geodesic from a to b when they lie on different edges.
  std::pair<std::size_t, std::size_t> exits(const TreeLocation& a, const TreeLocation& b) const;
  double exit_distance(const TreeLocation& a, std::size_t v) const;
  Point walk(const TreeLocation& a, const TreeLocation& b, double s) const;
  void branch_probes(std::size_t vertex, std::size_t via_edge, double remaining,
                     std::vector<Point>& out) const;

  MetricTree tree_;
  std::vector<std::vector<std::size_t>> incident_;
  std::vector<std::vector<double>> vdist_;
  std::vector<std::vector<Hop>> next_;
  std::vector<std::size_t> rays_;
};

SpacePtr make_tree(MetricTree tree);

}  // namespace hadamard
