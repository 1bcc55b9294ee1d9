#pragma once

#include "hadamard/space.hpp"

#include <limits>
#include <variant>
#include <vector>

namespace hadamard {

/// {x : <a, x> <= b}.
struct HalfSpace {
  Vector normal;
  double offset = 0.0;
};

/// Closed ball; on the sphere use SphericalCap.
struct Ball {
  Point center;
  double radius = 0.0;
};

struct Polyhedron {
  std::vector<HalfSpace> faces;
};

/// Offsets [lo, hi] of one tree edge; hi may be +inf on rays.
struct SubtreePiece {
  std::size_t edge = 0;
  double lo = 0.0;
  double hi = 0.0;
};

/// Connected union of edge intervals of a metric tree.
struct Subtree {
  std::vector<SubtreePiece> pieces;
};

/// Spherical ball of radius < pi/2.
struct SphericalCap {
  Point center;
  double radius = 0.0;
};

class ConvexBody;

struct IntersectionList {
  std::vector<ConvexBody> members;
};

/// Closed geodesically convex subset of a model space. Construct through the
/// make_* functions, which validate the shape against the space.
class ConvexBody {
 public:
  using Shape = std::variant<HalfSpace, Ball, Polyhedron, Subtree, SphericalCap, IntersectionList>;

  ConvexBody(SpacePtr space, Shape shape);

  const SpacePtr& space() const { return space_; }
  const Shape& shape() const { return shape_; }

 private:
  SpacePtr space_;
  Shape shape_;
};

ConvexBody make_half_space(SpacePtr space, Vector normal, double offset);
ConvexBody make_ball(SpacePtr space, Point center, double radius);
ConvexBody make_polyhedron(SpacePtr space, std::vector<HalfSpace> faces);
ConvexBody make_subtree(SpacePtr space, std::vector<SubtreePiece> pieces);
ConvexBody make_spherical_cap(SpacePtr space, Point center, double radius);
ConvexBody make_intersection(std::vector<ConvexBody> members);

/// Nearest point of `body` to x. Throws InfeasibleError when an intersection
/// turns out to be empty and CapabilityError for intersections in spaces
/// without a cyclic-projection scheme.
Point project(const ConvexBody& body, const Point& x);

/// d(x, body).
double distance_to(const ConvexBody& body, const Point& x);

bool contains(const ConvexBody& body, const Point& x, double tol);
bool contains(const ConvexBody& body, const Point& x);

/// True iff the body contains a geodesic ray asymptotic to u. Euclidean-type
/// spaces use recession cones (bounded box bodies have none); trees accept a
/// subtree that contains the tail of the named ray.
bool recession_contains(const ConvexBody& body, const BoundaryDirection& u);

/// Angle between u and the recession cone of a Euclidean body, capped at pi/2.
double recession_gap(const ConvexBody& body, const BoundaryDirection& u);

/// The body as an exact subtree (tree balls, subtrees and their intersections).
Subtree as_subtree(const ConvexBody& body);

/// Projection onto {x : A x <= b} in R^d: exact active-set enumeration when
/// the number of candidate active sets is small, Dykstra otherwise.
Vector project_polyhedron(const std::vector<HalfSpace>& faces, const Vector& x);

}  // namespace hadamard
