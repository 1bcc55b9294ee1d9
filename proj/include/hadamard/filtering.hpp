#pragma once

#include "hadamard/body.hpp"
#include "hadamard/field.hpp"
#include "hadamard/flow.hpp"
#include "hadamard/gradient.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace hadamard {

/// Decreasing chain body_0 ⊇ body_1 ⊇ ... of closed convex sets with a
/// basepoint o. A filtering family enters through a cofinal chain.
struct NestedFamily {
  SpacePtr space;
  std::vector<ConvexBody> bodies;
  Point basepoint;
};

/// Checks that the bodies share one space and that the basepoint is valid.
NestedFamily make_nested_family(std::vector<ConvexBody> bodies, Point basepoint);

struct NestednessReport {
  bool nested = true;
  /// max d(project(body_i, x), x) / max(1, d(o, x)) over sampled x in body_{i+1}.
  double max_violation = 0.0;
  std::size_t samples = 0;
};

/// Samples points of body_{i+1} by projecting random points and checks that
/// body_i fixes them (relative tolerance 1e-8).
NestednessReport verify_nested(const NestedFamily& family, std::uint64_t seed = 1, std::size_t samples_per_body = 16);

/// x -> d(x, body_k) - d(o, body_k).
ScalarField truncated_field(const NestedFamily& family, std::size_t k);

struct LimitOptions {
  /// Stability threshold for sup_probes |f_k - f_{k-1}|; defaults to the
  /// limit_field tolerance.
  std::optional<double> tolerance;
  double scale = 1.0;
  std::size_t probe_count = 128;
  /// Probes default to seeded points within 10 * scale of o.
  std::vector<Point> probes;
  std::uint64_t seed = 7;
};

struct LimitField {
  NestedFamily family;
  std::size_t truncation = 0;
  ScalarField field;
  /// sup_probes |f_k - f_{k-1}| at the chosen truncation.
  double stability = 0.0;
  /// False when no truncation met the tolerance; the last body is used.
  bool stable = false;
  /// d(o, body_i) for every i.
  std::vector<double> base_distances;
  std::vector<Point> probes;
};

/// Smallest truncation k whose field changes by at most the tolerance from
/// k - 1 on the probes. Throws NonEmptyIntersectionError unless d(o, body_last)
/// reaches the emptiness threshold times the scale.
LimitField build_limit_field(const NestedFamily& family, const LimitOptions& options = {});

/// (1 - sqrt(n / (n + 1))) / 2.
double gradient_floor(int n);

struct GradientFloorReport {
  int n = 0;
  double floor = 0.0;
  double min_observed = 0.0;
  bool passes = false;
  std::vector<double> observed;
};

/// Minimum of |grad(-f)| over the samples (the first few probes when empty);
/// passes iff it is >= floor - gradient_floor tolerance.
GradientFloorReport gradient_floor_check(const LimitField& limit, int n, const std::vector<Point>& samples = {},
                                         const ProbeProfile& profile = {});

struct InfinitySettings {
  double step = 0.1;
  double horizon = 256.0;
  /// Second start for the independence check; defaults to a point at
  /// distance 3 from o.
  std::optional<Point> second_start;
};

struct BodyVerdict {
  std::size_t index = 0;
  bool contains = false;
  /// Angle to the recession cone (Euclidean) or 0 / pi (trees).
  double gap = 0.0;
};

struct InfinityCertificate {
  std::optional<BoundaryDirection> direction;
  EscapeReport escape;
  EscapeReport second_escape;
  FlowTrajectory trajectory;
  std::vector<BodyVerdict> verdicts;
  double max_gap = 0.0;
  /// Angle between the directions from the two starts.
  double start_gap = 0.0;
  bool in_every_body = false;
  bool start_independent = false;
  bool certified = false;
};

/// Flows the deepest truncation of the limit field from o and from a second
/// start, then checks the escape direction against every body at infinity.
InfinityCertificate intersection_at_infinity(const LimitField& limit, const InfinitySettings& settings = {});

struct MonotoneRadiusReport {
  double max_angle = 0.0;
  std::size_t candidates_tested = 0;
  std::size_t candidates_in_cones = 0;
  bool passes = true;
};

/// Angles between xi and every candidate lying in all recession cones. With
/// no candidates, uses 256 spread directions plus the cone boundary points
/// found by bisection from xi toward each rejected direction.
MonotoneRadiusReport monotone_radius_check(const NestedFamily& family, const BoundaryDirection& xi,
                                           std::vector<Vector> candidates = {});

struct ProjectionSpreadReport {
  double t = 0.0;
  /// max over pairs of d(y_i, y_j) - t sqrt(2).
  double max_excess = 0.0;
  std::size_t pairs = 0;
  bool holds = true;
};

/// y_i is the point at distance t from p toward its projection on body_i (for
/// bodies farther than t); checks d(y_i, y_j) <= t sqrt(2) + 1e-9.
ProjectionSpreadReport projection_spread_check(const NestedFamily& family, const std::vector<Point>& samples,
                                               double t);

/// X_n = {a : a_i >= 1 for i < n} inside the box of dimension d, n = 1..m.
NestedFamily hilbert_box_family(std::size_t d, std::size_t m);

struct HilbertBoxReport {
  std::vector<double> distances;
  /// max_n |d(o, X_n) - sqrt(n)|.
  double max_error = 0.0;
  /// Least-squares slope of d(o, X_n)^2 against n.
  double slope = 0.0;
};

HilbertBoxReport hilbert_box_report(const NestedFamily& family);

// Generators. Offsets are s_i = s0 * growth^i.

/// {x : <x, u> >= s_i}.
NestedFamily half_space_family(SpacePtr space, Vector u, std::size_t count, double s0 = 1.0, double growth = 4.0);
/// {x : <q_j, x> >= s_i for every column q_j of the orthogonal matrix q}.
NestedFamily wedge_family(SpacePtr space, const Eigen::MatrixXd& q, std::size_t count, double s0 = 1.0,
                          double growth = 4.0);
/// C + s_i u with C = {x : <w, x> <= tan(gamma) <u, x>} for w = +-e_k of a
/// basis of the complement of u.
NestedFamily shifted_cone_family(SpacePtr space, Vector u, double gamma, std::size_t count, double s0 = 1.0,
                                 double growth = 4.0);
/// {<x, u> >= s_i} intersected with |<x, w>| <= width on the complement of u.
NestedFamily strip_family(SpacePtr space, Vector u, double width, std::size_t count, double s0 = 1.0,
                          double growth = 4.0);
/// Intersections of the half-spaces {<x, a_j> >= s_j} for j <= i, with
/// normals a_j = normalize(u + spread q^j w_j) turning toward u.
NestedFamily rotating_family(SpacePtr space, Vector u, std::vector<Vector> w, double spread, double q,
                             double s0 = 1.0, double growth = 4.0);
/// Sub-rays [s_i, inf) of one infinite ray of a tree.
NestedFamily tree_ray_family(SpacePtr space, std::size_t ray_edge, std::size_t count, double s0 = 1.0,
                             double growth = 4.0);
/// A random family of `count` bodies in Euclidean space of any dimension,
/// drawn among the generators above.
NestedFamily random_nested_family(SpacePtr space, std::mt19937_64& rng, std::size_t count = 16);

}  // namespace hadamard
