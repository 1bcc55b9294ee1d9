#include "hadamard/body.hpp"

#include "hadamard/error.hpp"
#include "hadamard/tolerance.hpp"
#include "hadamard/tree.hpp"
#include "overloaded.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>

namespace hadamard {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kMaxActiveSets = 20000;

using detail::Overloaded;

const TreeSpace& tree_of(const ConvexBody& body) {
  const auto* t = dynamic_cast<const TreeSpace*>(body.space().get());
  if (t == nullptr) throw UsageError("subtree bodies need a metric tree space");
  return *t;
}

double box_bound(Eigen::Index i) { return static_cast<double>(i + 1); }

Vector clamp_to_box(Vector x) {
  for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = std::clamp(x(i), -box_bound(i), box_bound(i));
  return x;
}

Vector project_half_space(const HalfSpace& h, const Vector& x) {
  const double excess = h.normal.dot(x) - h.offset;
  if (excess <= 0.0) return x;
  return x - (excess / h.normal.squaredNorm()) * h.normal;
}

/// Dykstra's cyclic projection onto the intersection of closed convex sets of R^d.
Vector dykstra(const std::vector<std::function<Vector(const Vector&)>>& projections, const Vector& x0) {
  const auto& tol = default_tolerances();
  const std::size_t m = projections.size();
  std::vector<Vector> incr(m, Vector::Zero(x0.size()));
  Vector x = x0;
  for (int it = 0; it < tol.dykstra_max_iterations; ++it) {
    const Vector start = x;
    double incr_change = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const Vector y = projections[i](x + incr[i]);
      const Vector next_incr = x + incr[i] - y;
      incr_change = std::max(incr_change, (next_incr - incr[i]).norm());
      incr[i] = next_incr;
      x = y;
    }
    if ((x - start).norm() <= tol.dykstra_stop && incr_change <= tol.dykstra_stop) break;
  }
  return x;
}

bool feasible(const std::vector<HalfSpace>& faces, const Vector& x, double slack) {
  return std::all_of(faces.begin(), faces.end(), [&](const HalfSpace& h) {
    return h.normal.dot(x) - h.offset <= slack * std::max(1.0, h.normal.norm());
  });
}

std::size_t active_set_count(std::size_t m, std::size_t d) {
  std::size_t total = 0;
  std::size_t binom = 1;
  for (std::size_t k = 1; k <= std::min(m, d); ++k) {
    binom = binom * (m - k + 1) / k;
    total += binom;
    if (total > kMaxActiveSets) return total;
  }
  return total;
}

// KKT enumeration: the projection is x - A_S^T mu for the active set S with
// mu >= 0 and the result feasible.
std::optional<Vector> project_by_active_sets(const std::vector<HalfSpace>& faces, const Vector& x) {
  const std::size_t m = faces.size();
  const auto d = static_cast<std::size_t>(x.size());
  const double scale = 1.0 + x.norm();
  std::vector<std::size_t> idx;
  for (std::size_t k = 1; k <= std::min(m, d); ++k) {
    idx.resize(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      Eigen::MatrixXd a(static_cast<Eigen::Index>(k), x.size());
      Vector rhs(static_cast<Eigen::Index>(k));
      bool violated = true;
      for (std::size_t j = 0; j < k; ++j) {
        const auto& h = faces[idx[j]];
        a.row(static_cast<Eigen::Index>(j)) = h.normal.transpose();
        rhs(static_cast<Eigen::Index>(j)) = h.normal.dot(x) - h.offset;
      }
      // Only faces violated by x can carry a positive multiplier alone; for
      // larger sets any face may be active, so test everything.
      if (k == 1) violated = rhs(0) > 0.0;
      if (violated) {
        const Eigen::MatrixXd g = a * a.transpose();
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(g);
        if (qr.rank() == static_cast<Eigen::Index>(k)) {
          const Vector mu = qr.solve(rhs);
          if (mu.minCoeff() >= -1e-12) {
            const Vector y = x - a.transpose() * mu;
            if (feasible(faces, y, 1e-11 * scale)) return y;
          }
        }
      }
      // Next combination.
      std::size_t j = k;
      while (j > 0 && idx[j - 1] == m - k + j - 1) --j;
      if (j == 0) break;
      ++idx[j - 1];
      for (std::size_t l = j; l < k; ++l) idx[l] = idx[l - 1] + 1;
    }
  }
  return std::nullopt;
}

bool all_axis_aligned(const std::vector<HalfSpace>& faces) {
  return std::all_of(faces.begin(), faces.end(),
                     [](const HalfSpace& h) { return (h.normal.array() != 0.0).count() == 1; });
}

// Coordinate-wise clamp for axis-aligned faces intersected with the box.
Vector project_axis_aligned(const std::vector<HalfSpace>& faces, const Vector& x, bool box) {
  const Eigen::Index d = x.size();
  Vector lo = Vector::Constant(d, -kInf);
  Vector hi = Vector::Constant(d, kInf);
  if (box) {
    for (Eigen::Index i = 0; i < d; ++i) {
      lo(i) = -box_bound(i);
      hi(i) = box_bound(i);
    }
  }
  for (const auto& h : faces) {
    Eigen::Index i = 0;
    h.normal.cwiseAbs().maxCoeff(&i);
    const double a = h.normal(i);
    const double bound = h.offset / a;
    if (a > 0.0) hi(i) = std::min(hi(i), bound);
    else lo(i) = std::max(lo(i), bound);
  }
  Vector y = x;
  for (Eigen::Index i = 0; i < d; ++i) {
    if (lo(i) > hi(i) + 1e-12) throw InfeasibleError("axis-aligned constraints are inconsistent");
    y(i) = std::clamp(x(i), lo(i), std::max(lo(i), hi(i)));
  }
  return y;
}

std::vector<HalfSpace> box_faces(Eigen::Index d) {
  std::vector<HalfSpace> out;
  for (Eigen::Index i = 0; i < d; ++i) {
    Vector e = Vector::Zero(d);
    e(i) = 1.0;
    out.push_back({e, box_bound(i)});
    out.push_back({-e, box_bound(i)});
  }
  return out;
}

// Collects the half-spaces describing a polyhedral body; false if the body
// has other members.
bool collect_faces(const ConvexBody& body, std::vector<HalfSpace>& out) {
  return std::visit(Overloaded{
                        [&](const HalfSpace& h) {
                          out.push_back(h);
                          return true;
                        },
                        [&](const Polyhedron& p) {
                          out.insert(out.end(), p.faces.begin(), p.faces.end());
                          return true;
                        },
                        [&](const IntersectionList& l) {
                          return std::all_of(l.members.begin(), l.members.end(),
                                             [&](const ConvexBody& b) { return collect_faces(b, out); });
                        },
                        [](const auto&) { return false; },
                    },
                    body.shape());
}

Point project_ball(const Space& space, const Point& center, double radius, const Point& x) {
  const double d = space.distance(center, x);
  if (d <= radius) return x;
  return space.geodesic_point(center, x, radius / d);
}

// Nearest point of one subtree piece and its distance.
std::pair<double, Point> nearest_on_piece(const TreeSpace& t, const SubtreePiece& piece,
                                          const TreeLocation& x) {
  const auto& e = t.tree().edges[piece.edge];
  if (x.edge == piece.edge) {
    const double s = std::clamp(x.offset, piece.lo, piece.hi);
    return {std::abs(x.offset - s), t.at(piece.edge, s)};
  }
  const double a = t.distance_to_vertex(x, e.from);
  const double b = e.to ? t.distance_to_vertex(x, *e.to) : kInf;
  auto dist_at = [&](double s) { return std::min(a + s, b + e.length - s); };
  // Distance along the edge is a minimum of two linear functions, hence
  // concave, so the minimum over the interval sits at an endpoint.
  const double dlo = dist_at(piece.lo);
  const double dhi = std::isfinite(piece.hi) ? dist_at(piece.hi) : kInf;
  if (dlo <= dhi) return {dlo, t.at(piece.edge, piece.lo)};
  return {dhi, t.at(piece.edge, piece.hi)};
}

Point project_subtree(const TreeSpace& t, const Subtree& s, const Point& x) {
  if (s.pieces.empty()) throw InfeasibleError("empty subtree");
  const auto& loc = x.tree_location();
  double best = kInf;
  Point out;
  for (const auto& piece : s.pieces) {
    auto [d, p] = nearest_on_piece(t, piece, loc);
    if (d < best) {
      best = d;
      out = p;
    }
  }
  return out;
}

Subtree ball_subtree(const TreeSpace& t, const Ball& b) {
  const auto& c = b.center.tree_location();
  Subtree out;
  const auto& edges = t.tree().edges;
  for (std::size_t ei = 0; ei < edges.size(); ++ei) {
    const auto& e = edges[ei];
    double lo = kInf;
    double hi = -kInf;
    if (c.edge == ei) {
      lo = std::max(0.0, c.offset - b.radius);
      hi = std::min(e.length, c.offset + b.radius);
    } else {
      const double a = t.distance_to_vertex(c, e.from);
      if (a <= b.radius) {
        lo = 0.0;
        hi = std::min(e.length, b.radius - a);
      }
      if (e.to) {
        const double bb = t.distance_to_vertex(c, *e.to);
        if (bb <= b.radius) {
          lo = std::min(lo, std::max(0.0, e.length - (b.radius - bb)));
          hi = std::max(hi, e.length);
        }
      }
    }
    if (lo <= hi) out.pieces.push_back({ei, lo, hi});
  }
  return out;
}

Subtree intersect_subtrees(const TreeSpace& t, const std::vector<Subtree>& parts) {
  Subtree acc = parts.front();
  for (std::size_t k = 1; k < parts.size(); ++k) {
    Subtree next;
    for (const auto& p : acc.pieces) {
      for (const auto& q : parts[k].pieces) {
        if (p.edge != q.edge) continue;
        const double lo = std::max(p.lo, q.lo);
        const double hi = std::min(p.hi, q.hi);
        if (lo <= hi + 1e-12) next.pieces.push_back({p.edge, lo, std::max(lo, hi)});
      }
    }
    if (next.pieces.empty()) {
      // Convex sets meeting only at a vertex share no edge interval.
      for (std::size_t v = 0; v < t.tree().vertex_count; ++v) {
        const Point pv = t.vertex_location(v);
        const auto& lv = pv.tree_location();
        auto inside = [&](const Subtree& s) {
          return std::any_of(s.pieces.begin(), s.pieces.end(), [&](const SubtreePiece& piece) {
            return nearest_on_piece(t, piece, lv).first <= 1e-12;
          });
        };
        if (inside(acc) && inside(parts[k])) {
          next.pieces.push_back({lv.edge, lv.offset, lv.offset});
          break;
        }
      }
    }
    if (next.pieces.empty()) throw InfeasibleError("subtrees have empty intersection");
    acc = std::move(next);
  }
  return acc;
}

void validate_subtree(const TreeSpace& t, const Subtree& s) {
  const auto& edges = t.tree().edges;
  if (s.pieces.empty()) throw UsageError("subtree needs at least one piece");
  for (const auto& p : s.pieces) {
    if (p.edge >= edges.size()) throw UsageError("subtree piece references a missing edge");
    const double len = edges[p.edge].length;
    if (!(p.lo >= 0.0) || !(p.lo <= p.hi) || p.hi > len) throw UsageError("subtree piece outside its edge");
    if (std::isinf(p.hi) && !edges[p.edge].is_ray()) throw UsageError("only rays may carry unbounded pieces");
  }
  // Union-find over pieces sharing an edge interval or a vertex.
  const std::size_t n = s.pieces.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t i) {
    return parent[i] == i ? i : parent[i] = find(parent[i]);
  };
  auto touches = [&](const SubtreePiece& p, std::size_t v) {
    const auto& e = edges[p.edge];
    return (e.from == v && p.lo <= 1e-12) || (e.to && *e.to == v && p.hi >= e.length - 1e-12);
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto& a = s.pieces[i];
      const auto& b = s.pieces[j];
      bool linked = a.edge == b.edge && a.lo <= b.hi + 1e-12 && b.lo <= a.hi + 1e-12;
      for (std::size_t v = 0; !linked && v < t.tree().vertex_count; ++v)
        linked = touches(a, v) && touches(b, v);
      if (linked) parent[find(i)] = find(j);
    }
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (find(i) != find(0)) throw UsageError("subtree pieces are not connected");
  }
}

Point project_intersection(const ConvexBody& body, const IntersectionList& list, const Point& x) {
  const Space& space = *body.space();
  if (space.kind() == SpaceKind::MetricTree) {
    return project_subtree(tree_of(body), as_subtree(body), x);
  }
  if (!space.is_euclidean_type())
    throw CapabilityError("intersections can only be projected in Euclidean-type spaces and trees");
  const bool box = space.kind() == SpaceKind::TruncatedHilbertBox;
  std::vector<HalfSpace> faces;
  Vector y;
  if (collect_faces(body, faces)) {
    if (all_axis_aligned(faces)) {
      y = project_axis_aligned(faces, x.coords(), box);
    } else {
      if (box) {
        const auto extra = box_faces(x.coords().size());
        faces.insert(faces.end(), extra.begin(), extra.end());
      }
      y = project_polyhedron(faces, x.coords());
    }
  } else {
    std::vector<std::function<Vector(const Vector&)>> projections;
    for (const auto& m : list.members) {
      projections.emplace_back([&m](const Vector& v) { return project(m, Point(v)).coords(); });
    }
    y = dykstra(projections, x.coords());
  }
  const Point out(y);
  for (const auto& m : list.members) {
    if (!contains(m, out, 1e-6)) throw InfeasibleError("cyclic projection found no common point");
  }
  return out;
}

}  // namespace

ConvexBody::ConvexBody(SpacePtr space, Shape shape) : space_(std::move(space)), shape_(std::move(shape)) {
  if (!space_) throw UsageError("convex body needs a space");
}

ConvexBody make_half_space(SpacePtr space, Vector normal, double offset) {
  if (!space || !space->is_euclidean_type()) throw CapabilityError("half-spaces need a Euclidean-type space");
  if (static_cast<std::size_t>(normal.size()) != space->dimension())
    throw UsageError("half-space normal has the wrong dimension");
  if (!(normal.norm() > 0.0) || !normal.allFinite() || !std::isfinite(offset))
    throw UsageError("half-space needs a finite nonzero normal");
  return ConvexBody(std::move(space), HalfSpace{std::move(normal), offset});
}

ConvexBody make_ball(SpacePtr space, Point center, double radius) {
  if (!space) throw UsageError("convex body needs a space");
  space->validate(center);
  if (!(radius >= 0.0) || !std::isfinite(radius)) throw UsageError("ball radius must be finite and non-negative");
  if (space->kind() == SpaceKind::Sphere && radius >= std::numbers::pi / 2)
    throw NonConvexRegimeError("spherical balls must have radius < pi/2");
  return ConvexBody(std::move(space), Ball{std::move(center), radius});
}

ConvexBody make_polyhedron(SpacePtr space, std::vector<HalfSpace> faces) {
  if (faces.empty()) throw UsageError("polyhedron needs at least one face");
  for (const auto& f : faces) make_half_space(space, f.normal, f.offset);
  return ConvexBody(std::move(space), Polyhedron{std::move(faces)});
}

ConvexBody make_subtree(SpacePtr space, std::vector<SubtreePiece> pieces) {
  ConvexBody body(std::move(space), Subtree{std::move(pieces)});
  validate_subtree(tree_of(body), std::get<Subtree>(body.shape()));
  return body;
}

ConvexBody make_spherical_cap(SpacePtr space, Point center, double radius) {
  if (!space || space->kind() != SpaceKind::Sphere) throw UsageError("spherical caps need a sphere");
  space->validate(center);
  if (!(radius >= 0.0) || radius >= std::numbers::pi / 2)
    throw NonConvexRegimeError("spherical caps must have radius in [0, pi/2)");
  return ConvexBody(std::move(space), SphericalCap{std::move(center), radius});
}

ConvexBody make_intersection(std::vector<ConvexBody> members) {
  if (members.empty()) throw UsageError("intersection needs at least one member");
  SpacePtr space = members.front().space();
  for (const auto& m : members) {
    if (m.space() != space && m.space()->describe() != space->describe())
      throw UsageError("intersection members must share one space");
  }
  return ConvexBody(std::move(space), IntersectionList{std::move(members)});
}

Vector project_polyhedron(const std::vector<HalfSpace>& faces, const Vector& x) {
  if (feasible(faces, x, 0.0)) return x;
  if (active_set_count(faces.size(), static_cast<std::size_t>(x.size())) <= kMaxActiveSets) {
    if (auto y = project_by_active_sets(faces, x)) return *y;
  }
  std::vector<std::function<Vector(const Vector&)>> projections;
  for (const auto& h : faces) projections.emplace_back([&h](const Vector& v) { return project_half_space(h, v); });
  return dykstra(projections, x);
}

Point project(const ConvexBody& body, const Point& x) {
  const Space& space = *body.space();
  space.validate(x);
  const bool box = space.kind() == SpaceKind::TruncatedHilbertBox;
  return std::visit(
      Overloaded{
          [&](const HalfSpace& h) -> Point {
            if (!box) return Vector(project_half_space(h, x.coords()));
            return project_intersection(body, IntersectionList{{body}}, x);
          },
          [&](const Polyhedron& p) -> Point {
            if (!box) {
              if (all_axis_aligned(p.faces)) return project_axis_aligned(p.faces, x.coords(), false);
              return Vector(project_polyhedron(p.faces, x.coords()));
            }
            return project_intersection(body, IntersectionList{{body}}, x);
          },
          [&](const Ball& b) -> Point {
            if (!box) return project_ball(space, b.center, b.radius, x);
            std::vector<std::function<Vector(const Vector&)>> projections{
                [&](const Vector& v) { return project_ball(space, b.center, b.radius, Point(v)).coords(); },
                [](const Vector& v) { return clamp_to_box(v); }};
            return Vector(dykstra(projections, x.coords()));
          },
          [&](const Subtree& s) -> Point { return project_subtree(tree_of(body), s, x); },
          [&](const SphericalCap& c) -> Point { return project_ball(space, c.center, c.radius, x); },
          [&](const IntersectionList& l) -> Point { return project_intersection(body, l, x); },
      },
      body.shape());
}

double distance_to(const ConvexBody& body, const Point& x) {
  return body.space()->distance(x, project(body, x));
}

bool contains(const ConvexBody& body, const Point& x, double tol) {
  const Space& space = *body.space();
  return std::visit(
      Overloaded{
          [&](const HalfSpace& h) { return (h.normal.dot(x.coords()) - h.offset) / h.normal.norm() <= tol; },
          [&](const Polyhedron& p) {
            return std::all_of(p.faces.begin(), p.faces.end(), [&](const HalfSpace& h) {
              return (h.normal.dot(x.coords()) - h.offset) / h.normal.norm() <= tol;
            });
          },
          [&](const Ball& b) { return space.distance(b.center, x) <= b.radius + tol; },
          [&](const Subtree& s) {
            const auto& t = tree_of(body);
            return std::any_of(s.pieces.begin(), s.pieces.end(), [&](const SubtreePiece& piece) {
              return nearest_on_piece(t, piece, x.tree_location()).first <= tol;
            });
          },
          [&](const SphericalCap& c) { return space.distance(c.center, x) <= c.radius + tol; },
          [&](const IntersectionList& l) {
            return std::all_of(l.members.begin(), l.members.end(),
                               [&](const ConvexBody& m) { return contains(m, x, tol); });
          },
      },
      body.shape());
}

bool contains(const ConvexBody& body, const Point& x) {
  return contains(body, x, default_tolerances().projection);
}

bool recession_contains(const ConvexBody& body, const BoundaryDirection& u) {
  const Space& space = *body.space();
  if (space.kind() == SpaceKind::MetricTree) {
    space.validate(u);
    const std::size_t ray = u.ray().edge;
    const Subtree s = as_subtree(body);
    return std::any_of(s.pieces.begin(), s.pieces.end(),
                       [&](const SubtreePiece& p) { return p.edge == ray && std::isinf(p.hi); });
  }
  if (space.kind() == SpaceKind::TruncatedHilbertBox) return false;  // bounded
  if (space.kind() != SpaceKind::Euclidean)
    throw CapabilityError("recession cones are only available in Euclidean-type spaces and trees");
  space.validate(u);
  std::vector<HalfSpace> faces;
  if (!collect_faces(body, faces)) return false;  // contains a bounded member
  const double tol = default_tolerances().recession;
  return std::all_of(faces.begin(), faces.end(), [&](const HalfSpace& h) {
    return u.vector().dot(h.normal) / h.normal.norm() <= tol;
  });
}

double recession_gap(const ConvexBody& body, const BoundaryDirection& u) {
  const Space& space = *body.space();
  if (space.kind() == SpaceKind::TruncatedHilbertBox) return std::numbers::pi / 2;
  if (space.kind() != SpaceKind::Euclidean)
    throw CapabilityError("recession angles are only available in Euclidean space");
  space.validate(u);
  std::vector<HalfSpace> faces;
  if (!collect_faces(body, faces)) return std::numbers::pi / 2;
  for (auto& h : faces) {
    h.normal /= h.normal.norm();
    h.offset = 0.0;
  }
  const Vector& v = u.vector();
  const Vector p = project_polyhedron(faces, v);
  if (p.norm() < 1e-15) return std::numbers::pi / 2;
  return std::asin(std::min(1.0, (v - p).norm()));
}

Subtree as_subtree(const ConvexBody& body) {
  const auto& t = tree_of(body);
  return std::visit(Overloaded{
                        [&](const Subtree& s) { return s; },
                        [&](const Ball& b) { return ball_subtree(t, b); },
                        [&](const IntersectionList& l) {
                          std::vector<Subtree> parts;
                          for (const auto& m : l.members) parts.push_back(as_subtree(m));
                          return intersect_subtrees(t, parts);
                        },
                        [](const auto&) -> Subtree {
                          throw CapabilityError("body has no subtree representation");
                        },
                    },
                    body.shape());
}

}  // namespace hadamard
