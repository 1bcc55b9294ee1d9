#include "hadamard/filtering.hpp"

#include "hadamard/error.hpp"
#include "hadamard/tolerance.hpp"
#include "hadamard/tree.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace hadamard {
namespace {

// Seeded points within `radius` of p.
std::vector<Point> points_around(const Space& space, const Point& p, double radius, std::size_t count,
                                 std::uint64_t seed) {
  std::vector<Point> out;
  if (auto dim = space.chart_dimension(p)) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    while (out.size() < count) {
      Vector dir(static_cast<Eigen::Index>(*dim));
      for (auto& c : dir) c = g(rng);
      if (dir.norm() < 1e-12) continue;
      out.push_back(space.chart_exp(p, dir / dir.norm(), radius * u(rng)));
    }
    return out;
  }
  // Trees and products: probe spheres at evenly spaced radii.
  const std::size_t rings = 16;
  for (std::size_t j = 1; j <= rings && out.size() < count; ++j) {
    for (auto& q : space.probe_sphere(p, radius * static_cast<double>(j) / rings, count)) {
      if (out.size() == count) break;
      out.push_back(std::move(q));
    }
  }
  return out;
}

std::vector<double> offsets(std::size_t count, double s0, double growth) {
  if (count == 0) throw UsageError("family needs at least one body");
  if (!(s0 > 0.0) || !(growth > 1.0)) throw UsageError("offsets need s0 > 0 and growth > 1");
  std::vector<double> s(count);
  for (std::size_t i = 0; i < count; ++i) s[i] = s0 * std::pow(growth, static_cast<double>(i));
  return s;
}

void require_euclidean(const SpacePtr& space) {
  if (!space || space->kind() != SpaceKind::Euclidean) throw UsageError("generator needs a Euclidean space");
}

Vector unit(const Vector& u) {
  if (!(u.norm() > 0.0)) throw UsageError("direction must be nonzero");
  return u / u.norm();
}

// Orthonormal basis of the complement of the unit vector u (columns).
Eigen::MatrixXd complement(const Vector& u) {
  const Eigen::Index n = u.size();
  Eigen::MatrixXd a(n, n);
  a.col(0) = u;
  a.rightCols(n - 1) = Eigen::MatrixXd::Identity(n, n).rightCols(n - 1);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  const Eigen::MatrixXd q = qr.householderQ();
  return q.rightCols(n - 1);
}

NestedFamily polyhedral_family(const SpacePtr& space, const std::vector<std::vector<HalfSpace>>& faces) {
  std::vector<ConvexBody> bodies;
  for (const auto& f : faces) bodies.push_back(make_polyhedron(space, f));
  return make_nested_family(std::move(bodies), space->origin());
}

}  // namespace

NestedFamily make_nested_family(std::vector<ConvexBody> bodies, Point basepoint) {
  if (bodies.empty()) throw UsageError("nested family needs at least one body");
  SpacePtr space = bodies.front().space();
  for (const auto& b : bodies) {
    if (b.space() != space) throw UsageError("family bodies live in different spaces");
  }
  space->validate(basepoint);
  return NestedFamily{std::move(space), std::move(bodies), std::move(basepoint)};
}

NestednessReport verify_nested(const NestedFamily& family, std::uint64_t seed, std::size_t samples_per_body) {
  NestednessReport rep;
  const Space& space = *family.space;
  for (std::size_t i = 0; i + 1 < family.bodies.size(); ++i) {
    const auto& inner = family.bodies[i + 1];
    const double reach = distance_to(inner, family.basepoint) + 10.0;
    for (const auto& q : points_around(space, family.basepoint, reach, samples_per_body, seed + i)) {
      const Point x = project(inner, q);
      const double err = space.distance(project(family.bodies[i], x), x);
      const double rel = err / std::max(1.0, space.distance(family.basepoint, x));
      rep.max_violation = std::max(rep.max_violation, rel);
      ++rep.samples;
    }
  }
  rep.nested = rep.max_violation <= 1e-8;
  return rep;
}

ScalarField truncated_field(const NestedFamily& family, std::size_t k) {
  if (k >= family.bodies.size()) throw UsageError("truncation index out of range");
  const auto& body = family.bodies[k];
  return shifted(distance_field(body), -distance_to(body, family.basepoint));
}

LimitField build_limit_field(const NestedFamily& family, const LimitOptions& options) {
  const auto& tol = default_tolerances();
  const double limit_tol = options.tolerance.value_or(tol.limit_field);
  if (!(options.scale > 0.0)) throw UsageError("scale must be positive");
  LimitField out{family, 0, truncated_field(family, 0), 0.0, false, {}, {}};
  for (const auto& b : family.bodies) out.base_distances.push_back(distance_to(b, family.basepoint));
  if (out.base_distances.back() < tol.emptiness_threshold * options.scale) {
    throw NonEmptyIntersectionError("d(o, X_k) stays below the emptiness threshold; use the finite intersection");
  }
  out.probes = options.probes.empty()
                   ? points_around(*family.space, family.basepoint, 10.0 * options.scale, options.probe_count,
                                   options.seed)
                   : options.probes;
  std::vector<double> prev;
  for (std::size_t k = 0; k < family.bodies.size(); ++k) {
    const auto f = truncated_field(family, k);
    std::vector<double> cur;
    for (const auto& p : out.probes) cur.push_back(f(p));
    if (k > 0) {
      double change = 0.0;
      for (std::size_t j = 0; j < cur.size(); ++j) change = std::max(change, std::abs(cur[j] - prev[j]));
      out.truncation = k;
      out.field = f;
      out.stability = change;
      if (change <= limit_tol) {
        out.stable = true;
        return out;
      }
    }
    prev = std::move(cur);
  }
  return out;
}

double gradient_floor(int n) {
  if (n < 1) throw UsageError("dimension must be positive");
  return 0.5 * (1.0 - std::sqrt(static_cast<double>(n) / (n + 1.0)));
}

GradientFloorReport gradient_floor_check(const LimitField& limit, int n, const std::vector<Point>& samples,
                                         const ProbeProfile& profile) {
  GradientFloorReport rep;
  rep.n = n;
  rep.floor = gradient_floor(n);
  std::vector<Point> pts = samples;
  if (pts.empty()) {
    pts.push_back(limit.family.basepoint);
    for (std::size_t i = 0; i < limit.probes.size() && pts.size() < 8; ++i) pts.push_back(limit.probes[i]);
  }
  rep.min_observed = std::numeric_limits<double>::infinity();
  for (const auto& p : pts) {
    const double g = absolute_gradient(limit.field, p, profile).value;
    rep.observed.push_back(g);
    rep.min_observed = std::min(rep.min_observed, g);
  }
  rep.passes = rep.min_observed >= rep.floor - default_tolerances().gradient_floor;
  return rep;
}

InfinityCertificate intersection_at_infinity(const LimitField& limit, const InfinitySettings& settings) {
  const auto& family = limit.family;
  const Space& space = *family.space;
  const bool tree = space.kind() == SpaceKind::MetricTree;
  if (!tree && space.kind() != SpaceKind::Euclidean)
    throw CapabilityError("boundary certificates need Euclidean space or a tree");
  const auto& tol = default_tolerances();
  const auto f = truncated_field(family, family.bodies.size() - 1);

  InfinityCertificate cert;
  cert.trajectory = run_flow(f, family.basepoint, settings.horizon, settings.step);
  cert.escape = velocity_of_escape(cert.trajectory);
  if (!cert.escape.direction || !cert.escape.converged) return cert;
  cert.direction = cert.escape.direction;

  Point second;
  if (settings.second_start) {
    space.validate(*settings.second_start);
    second = *settings.second_start;
  } else {
    second = points_around(space, family.basepoint, 3.0, 1, 11).front();
    if (tree) second = space.probe_sphere(family.basepoint, 3.0, 8).back();
  }
  cert.second_escape = velocity_of_escape(run_flow(f, second, settings.horizon, settings.step));

  const auto& xi = *cert.direction;
  for (std::size_t i = 0; i < family.bodies.size(); ++i) {
    BodyVerdict v{i, false, 0.0};
    if (tree) {
      v.contains = recession_contains(family.bodies[i], xi);
      v.gap = v.contains ? 0.0 : std::numbers::pi;
    } else {
      v.gap = recession_gap(family.bodies[i], xi);
      v.contains = v.gap <= tol.angular;
    }
    cert.max_gap = std::max(cert.max_gap, v.gap);
    cert.verdicts.push_back(v);
  }
  cert.in_every_body = std::all_of(cert.verdicts.begin(), cert.verdicts.end(),
                                   [](const BodyVerdict& v) { return v.contains; });

  if (!cert.second_escape.direction) {
    cert.start_gap = std::numbers::pi;
  } else if (tree) {
    cert.start_gap = cert.second_escape.direction->ray().edge == xi.ray().edge ? 0.0 : std::numbers::pi;
  } else {
    cert.start_gap = angle_between(cert.second_escape.direction->vector(), xi.vector());
  }
  cert.start_independent = cert.start_gap <= tol.start_independence;
  cert.certified = cert.in_every_body && cert.start_independent;
  return cert;
}

MonotoneRadiusReport monotone_radius_check(const NestedFamily& family, const BoundaryDirection& xi,
                                           std::vector<Vector> candidates) {
  const Space& space = *family.space;
  if (space.kind() != SpaceKind::Euclidean) throw CapabilityError("monotone radius check needs Euclidean space");
  space.validate(xi);
  auto in_cones = [&](const Vector& v) {
    return std::all_of(family.bodies.begin(), family.bodies.end(),
                       [&](const ConvexBody& b) { return recession_contains(b, BoundaryDirection(v)); });
  };
  const Vector& x = xi.vector();
  if (candidates.empty()) {
    candidates = unit_directions(space.dimension(), 256);
    if (in_cones(x)) {
      const std::size_t spread = candidates.size();
      for (std::size_t c = 0; c < spread; ++c) {
        const Vector phi = candidates[c];
        if (in_cones(phi) || phi.dot(x) < -1.0 + 1e-9) continue;
        // Bisect along the arc from xi toward phi for the cone boundary.
        double lo = 0.0, hi = 1.0;
        auto arc = [&](double s) {
          const Vector v = (1.0 - s) * x + s * phi;
          return Vector(v / v.norm());
        };
        for (int it = 0; it < 60; ++it) {
          const double mid = 0.5 * (lo + hi);
          (in_cones(arc(mid)) ? lo : hi) = mid;
        }
        candidates.push_back(arc(lo));
      }
    }
  }
  MonotoneRadiusReport rep;
  for (const auto& c : candidates) {
    ++rep.candidates_tested;
    if (!(c.norm() > 0.0)) continue;
    const Vector v = c / c.norm();
    if (!in_cones(v)) continue;
    ++rep.candidates_in_cones;
    rep.max_angle = std::max(rep.max_angle, angle_between(v, x));
  }
  rep.passes = rep.max_angle <= std::numbers::pi / 2 + default_tolerances().angular;
  return rep;
}

ProjectionSpreadReport projection_spread_check(const NestedFamily& family, const std::vector<Point>& samples,
                                               double t) {
  if (!(t > 0.0)) throw UsageError("t must be positive");
  const Space& space = *family.space;
  ProjectionSpreadReport rep;
  rep.t = t;
  rep.max_excess = -std::numeric_limits<double>::infinity();
  const double bound = t * std::numbers::sqrt2;
  for (const auto& p : samples) {
    std::vector<Point> ys;
    for (const auto& b : family.bodies) {
      const Point x = project(b, p);
      if (space.distance(p, x) > t) ys.push_back(space.radial_point(p, x, t));
    }
    for (std::size_t i = 0; i < ys.size(); ++i) {
      for (std::size_t j = i + 1; j < ys.size(); ++j) {
        rep.max_excess = std::max(rep.max_excess, space.distance(ys[i], ys[j]) - bound);
        ++rep.pairs;
      }
    }
  }
  if (rep.pairs == 0) rep.max_excess = 0.0;
  rep.holds = rep.max_excess <= 1e-9;
  return rep;
}

NestedFamily hilbert_box_family(std::size_t d, std::size_t m) {
  if (m < 1) throw UsageError("family length must be positive");
  if (m > d) throw UsageError("family length exceeds the box dimension");
  const auto space = make_hilbert_box(d);
  std::vector<ConvexBody> bodies;
  for (std::size_t n = 1; n <= m; ++n) {
    std::vector<HalfSpace> faces;
    for (std::size_t i = 0; i < n; ++i) {
      Vector a = Vector::Zero(static_cast<Eigen::Index>(d));
      a(static_cast<Eigen::Index>(i)) = -1.0;
      faces.push_back({a, -1.0});
    }
    bodies.push_back(make_polyhedron(space, std::move(faces)));
  }
  return make_nested_family(std::move(bodies), space->origin());
}

HilbertBoxReport hilbert_box_report(const NestedFamily& family) {
  HilbertBoxReport rep;
  double sxy = 0.0, sxx = 0.0, sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < family.bodies.size(); ++i) {
    const double n = static_cast<double>(i + 1);
    const double d = distance_to(family.bodies[i], family.basepoint);
    rep.distances.push_back(d);
    rep.max_error = std::max(rep.max_error, std::abs(d - std::sqrt(n)));
    sx += n;
    sy += d * d;
    sxy += n * d * d;
    sxx += n * n;
  }
  const double k = static_cast<double>(family.bodies.size());
  const double den = k * sxx - sx * sx;
  rep.slope = den > 0.0 ? (k * sxy - sx * sy) / den : sy / sx;
  return rep;
}

NestedFamily half_space_family(SpacePtr space, Vector u, std::size_t count, double s0, double growth) {
  require_euclidean(space);
  u = unit(u);
  std::vector<std::vector<HalfSpace>> faces;
  for (double s : offsets(count, s0, growth)) faces.push_back({{-u, -s}});
  return polyhedral_family(space, faces);
}

NestedFamily wedge_family(SpacePtr space, const Eigen::MatrixXd& q, std::size_t count, double s0, double growth) {
  require_euclidean(space);
  const auto n = static_cast<Eigen::Index>(space->dimension());
  if (q.rows() != n || q.cols() != n || !(q.transpose() * q).isIdentity(1e-10))
    throw UsageError("wedge frame must be an orthogonal matrix");
  std::vector<std::vector<HalfSpace>> faces;
  for (double s : offsets(count, s0, growth)) {
    std::vector<HalfSpace> f;
    for (Eigen::Index j = 0; j < n; ++j) f.push_back({-q.col(j), -s});
    faces.push_back(std::move(f));
  }
  return polyhedral_family(space, faces);
}

NestedFamily shifted_cone_family(SpacePtr space, Vector u, double gamma, std::size_t count, double s0,
                                 double growth) {
  require_euclidean(space);
  if (space->dimension() < 2) throw UsageError("cones need dimension >= 2");
  if (!(gamma > 0.0 && gamma < std::numbers::pi / 2)) throw UsageError("cone angle must lie in (0, pi/2)");
  u = unit(u);
  const Eigen::MatrixXd w = complement(u);
  std::vector<Vector> normals;
  for (Eigen::Index k = 0; k < w.cols(); ++k) {
    normals.push_back(w.col(k) - std::tan(gamma) * u);
    normals.push_back(-w.col(k) - std::tan(gamma) * u);
  }
  std::vector<std::vector<HalfSpace>> faces;
  for (double s : offsets(count, s0, growth)) {
    std::vector<HalfSpace> f;
    for (const auto& a : normals) f.push_back({a, s * a.dot(u)});
    faces.push_back(std::move(f));
  }
  return polyhedral_family(space, faces);
}

NestedFamily strip_family(SpacePtr space, Vector u, double width, std::size_t count, double s0, double growth) {
  require_euclidean(space);
  if (space->dimension() < 2) throw UsageError("strips need dimension >= 2");
  if (!(width > 0.0)) throw UsageError("strip width must be positive");
  u = unit(u);
  const Eigen::MatrixXd w = complement(u);
  std::vector<std::vector<HalfSpace>> faces;
  for (double s : offsets(count, s0, growth)) {
    std::vector<HalfSpace> f{{-u, -s}};
    for (Eigen::Index k = 0; k < w.cols(); ++k) {
      f.push_back({w.col(k), width});
      f.push_back({-w.col(k), width});
    }
    faces.push_back(std::move(f));
  }
  return polyhedral_family(space, faces);
}

NestedFamily rotating_family(SpacePtr space, Vector u, std::vector<Vector> w, double spread, double q, double s0,
                             double growth) {
  require_euclidean(space);
  if (!(spread > 0.0 && spread < 1.0) || !(q > 0.0 && q < 1.0))
    throw UsageError("rotating family needs spread and q in (0, 1)");
  u = unit(u);
  const auto s = offsets(w.size(), s0, growth);
  std::vector<std::vector<HalfSpace>> faces;
  std::vector<HalfSpace> acc;
  for (std::size_t j = 0; j < w.size(); ++j) {
    const Vector a = unit(u + spread * std::pow(q, static_cast<double>(j)) * unit(w[j]));
    acc.push_back({-a, -s[j]});
    faces.push_back(acc);
  }
  return polyhedral_family(space, faces);
}

NestedFamily tree_ray_family(SpacePtr space, std::size_t ray_edge, std::size_t count, double s0, double growth) {
  if (!space || space->kind() != SpaceKind::MetricTree) throw UsageError("generator needs a tree");
  space->validate(BoundaryDirection(TreeRay{ray_edge}));
  std::vector<ConvexBody> bodies;
  for (double s : offsets(count, s0, growth)) {
    bodies.push_back(make_subtree(space, {{ray_edge, s, std::numeric_limits<double>::infinity()}}));
  }
  return make_nested_family(std::move(bodies), space->origin());
}

NestedFamily random_nested_family(SpacePtr space, std::mt19937_64& rng, std::size_t count) {
  require_euclidean(space);
  const auto n = static_cast<Eigen::Index>(space->dimension());
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  auto gaussian = [&] {
    Vector v(n);
    for (auto& c : v) c = g(rng);
    return v;
  };
  Vector u = gaussian();
  while (u.norm() < 1e-6) u = gaussian();
  u /= u.norm();
  const double s0 = 0.5 + 1.5 * uni(rng);
  if (n == 1) return half_space_family(space, u, count, s0);
  // Rotating families stay in the plane: the projection solve enumerates
  // active sets and many faces in higher dimension make it slow.
  const int kinds = n == 2 ? 5 : 4;
  switch (std::uniform_int_distribution<int>(0, kinds - 1)(rng)) {
    case 0:
      return half_space_family(space, u, count, s0);
    case 1: {
      Eigen::HouseholderQR<Eigen::MatrixXd> qr(Eigen::MatrixXd::NullaryExpr(n, n, [&] { return g(rng); }));
      const Eigen::MatrixXd q = qr.householderQ();
      return wedge_family(space, q, count, s0);
    }
    case 2:
      return shifted_cone_family(space, u, 0.2 + 1.0 * uni(rng), count, s0);
    case 3:
      return strip_family(space, u, 0.5 + 2.0 * uni(rng), count, s0);
    default: {
      std::vector<Vector> w;
      for (std::size_t j = 0; j < count; ++j) {
        Vector v = gaussian();
        v -= v.dot(u) * u;
        w.push_back(v.norm() > 1e-6 ? Vector(v) : complement(u).col(0).eval());
      }
      return rotating_family(space, u, std::move(w), 0.5, 0.125, s0);
    }
  }
}

}  // namespace hadamard
