#include "hadamard/flow.hpp"

#include "hadamard/error.hpp"
#include "hadamard/tolerance.hpp"
#include "hadamard/tree.hpp"
#include "numeric.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

namespace hadamard {
namespace {

constexpr int kMaxInnerIterations = 200;
constexpr std::size_t kMaxPieceSubsets = 50000;

double box_bound(Eigen::Index i) { return static_cast<double>(i + 1); }

Vector clamp_if_box(const Space& space, Vector y) {
  if (space.kind() != SpaceKind::TruncatedHilbertBox) return y;
  for (Eigen::Index i = 0; i < y.size(); ++i) y(i) = std::clamp(y(i), -box_bound(i), box_bound(i));
  return y;
}

Point move_towards(const Space& space, const Point& x, const Point& target, double step) {
  const double d = space.distance(x, target);
  if (d <= step) return target;
  return space.geodesic_point(x, target, step / d);
}

std::size_t binomial_sum(std::size_t m, std::size_t kmax) {
  std::size_t total = 0;
  std::size_t binom = 1;
  for (std::size_t k = 1; k <= std::min(m, kmax); ++k) {
    binom = binom * (m - k + 1) / k;
    total += binom;
    if (total > kMaxPieceSubsets) break;
  }
  return total;
}

// Exact proximal map of max_i (<a_i, y> + c_i) in R^d: for the right active
// set S, y = x - step * A_S^T theta with theta in the simplex and all active
// pieces equal at y.
std::optional<Vector> prox_max_affine(const std::vector<const Affine*>& pieces, const Vector& x, double step) {
  const std::size_t m = pieces.size();
  std::vector<double> vals(m);
  double top = -std::numeric_limits<double>::infinity();
  double lip = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    vals[i] = pieces[i]->normal.dot(x) + pieces[i]->constant;
    top = std::max(top, vals[i]);
    lip = std::max(lip, pieces[i]->normal.norm());
  }
  // The step moves y by at most step * lip, so only pieces within
  // 2 * step * lip^2 of the top can be active.
  std::vector<std::size_t> cand;
  for (std::size_t i = 0; i < m; ++i) {
    if (vals[i] >= top - 2.0 * step * lip * lip - 1e-12 * (1.0 + std::abs(top))) cand.push_back(i);
  }
  const std::size_t kmax = std::min(cand.size(), static_cast<std::size_t>(x.size()) + 1);
  if (binomial_sum(cand.size(), kmax) > kMaxPieceSubsets) return std::nullopt;

  std::vector<std::size_t> idx;
  for (std::size_t k = 1; k <= kmax; ++k) {
    idx.resize(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      const auto kk = static_cast<Eigen::Index>(k);
      Eigen::MatrixXd a(kk, x.size());
      Vector rhs(kk + 1);
      for (Eigen::Index j = 0; j < kk; ++j) {
        const auto* p = pieces[cand[idx[static_cast<std::size_t>(j)]]];
        a.row(j) = p->normal.transpose();
        rhs(j) = p->normal.dot(x) + p->constant;
      }
      rhs(kk) = 1.0;
      Eigen::MatrixXd sys = Eigen::MatrixXd::Zero(kk + 1, kk + 1);
      sys.topLeftCorner(kk, kk) = step * a * a.transpose();
      sys.topRightCorner(kk, 1).setOnes();
      sys.bottomLeftCorner(1, kk).setOnes();
      Eigen::FullPivLU<Eigen::MatrixXd> lu(sys);
      if (lu.isInvertible()) {
        const Vector sol = lu.solve(rhs);
        const Vector theta = sol.head(kk);
        const double t = sol(kk);
        if (theta.minCoeff() >= -1e-12) {
          const Vector y = x - step * (a.transpose() * theta);
          bool ok = true;
          for (std::size_t i = 0; i < m && ok; ++i) {
            ok = pieces[i]->normal.dot(y) + pieces[i]->constant <= t + 1e-11 * (1.0 + std::abs(t));
          }
          if (ok) return y;
        }
      }
      std::size_t j = k;
      while (j > 0 && idx[j - 1] == cand.size() - k + j - 1) --j;
      if (j == 0) break;
      ++idx[j - 1];
      for (std::size_t l = j; l < k; ++l) idx[l] = idx[l - 1] + 1;
    }
  }
  return std::nullopt;
}

[[noreturn]] void inner_failure(const char* what, int iterations, double residual) {
  std::ostringstream os;
  os << "proximal solve did not converge (" << what << ", iterations=" << iterations
     << ", last improvement=" << residual << ")";
  throw NumericalError(os.str());
}

// Descent on Phi(y) = f(y) + |y - x|^2 / (2 step) in Euclidean-type spaces:
// steepest direction from central differences, falling back to sampled
// directions where f has a kink; golden-section line search along each.
Point prox_generic_flat(const ScalarField& f, const Point& x, double step) {
  const Space& space = *f.space();
  const Vector& x0 = x.coords();
  const Eigen::Index d = x0.size();
  auto phi = [&](const Vector& y) { return evaluate(f, Point(y)) + (y - x0).squaredNorm() / (2.0 * step); };
  Vector y = x0;
  double fy = phi(y);
  double scale = step * std::max(lipschitz_bound(f), 1e-3);
  double last_gain = 0.0;
  for (int it = 0; it < kMaxInnerIterations; ++it) {
    const double h = 1e-7 * (1.0 + y.norm());
    Vector g(d);
    for (Eigen::Index i = 0; i < d; ++i) {
      Vector yp = y;
      Vector ym = y;
      yp(i) += h;
      ym(i) -= h;
      g(i) = (phi(clamp_if_box(space, yp)) - phi(clamp_if_box(space, ym))) / (2.0 * h);
    }
    auto line = [&](const Vector& dir, double tmax) {
      auto at = [&](double t) { return clamp_if_box(space, y + t * dir); };
      const auto [t, v] = detail::golden_max([&](double s) { return -phi(at(s)); }, 0.0, tmax,
                                             1e-14 * (1.0 + y.norm()));
      return std::pair{at(t), -v};
    };
    Vector best_y = y;
    double best_v = fy;
    const double gn = g.norm();
    if (gn > 0.0) {
      auto [cand, v] = line(-g / gn, 1.5 * step * gn + 1e-15);
      if (v < best_v) {
        best_v = v;
        best_y = cand;
      }
    }
    if (best_v >= fy - 1e-15 * (1.0 + std::abs(fy))) {
      // Kink: search sampled directions at shrinking radii.
      for (double r = scale; r > 1e-13 * (1.0 + y.norm()) && best_v >= fy; r *= 0.25) {
        for (const auto& u : unit_directions(static_cast<std::size_t>(d), 64)) {
          const Vector cand = clamp_if_box(space, y + r * u);
          const double v = phi(cand);
          if (v < best_v) {
            best_v = v;
            best_y = cand;
          }
        }
        if (best_v < fy) {
          const Vector dir = (best_y - y).normalized();
          auto [cand, v] = line(dir, 2.0 * r);
          if (v < best_v) {
            best_v = v;
            best_y = cand;
          }
        }
      }
    }
    const double moved = (best_y - y).norm();
    last_gain = fy - best_v;
    if (best_v >= fy) return Point(y);  // no descent direction left
    y = best_y;
    fy = best_v;
    scale = std::max(moved, 1e-12);
    if (moved <= 1e-13 * (1.0 + y.norm())) return Point(y);
  }
  inner_failure("flat descent", kMaxInnerIterations, last_gain);
}

// Same scheme on spaces without linear structure, using probe spheres.
Point prox_generic_metric(const ScalarField& f, const Point& x, double step) {
  const Space& space = *f.space();
  auto phi = [&](const Point& y) {
    const double d = space.distance(x, y);
    return evaluate(f, y) + d * d / (2.0 * step);
  };
  Point y = x;
  double fy = phi(y);
  double rho = step * std::max(lipschitz_bound(f), 1e-3);
  int moves = 0;
  for (int it = 0; it < 4 * kMaxInnerIterations; ++it) {
    if (rho < 1e-13) return y;
    Point best = y;
    double best_v = fy;
    for (const auto& q : space.probe_sphere(y, rho, 64)) {
      const double v = phi(q);
      if (v < best_v) {
        best_v = v;
        best = q;
      }
    }
    if (best_v >= fy) {
      rho *= 0.5;
      continue;
    }
    const Point anchor = best;
    const auto [s, v] = detail::golden_max([&](double t) { return -phi(space.radial_point(y, anchor, t)); }, 0.0,
                                           2.0 * rho, 1e-14);
    if (-v < best_v) best = space.radial_point(y, anchor, s);
    y = best;
    fy = phi(y);
    if (++moves > kMaxInnerIterations) inner_failure("sampled descent", moves, rho);
  }
  inner_failure("sampled descent", moves, rho);
}

std::optional<std::vector<const Affine*>> affine_pieces(const ScalarField& f) {
  const auto* m = std::get_if<MaxOf>(&f.form());
  if (m == nullptr) return std::nullopt;
  std::vector<const Affine*> out;
  for (const auto& g : m->members) {
    const auto* a = std::get_if<Affine>(&g.form());
    if (a == nullptr) return std::nullopt;
    out.push_back(a);
  }
  return out;
}

}  // namespace

Point flow_step(const ScalarField& f, const Point& x, double step) {
  if (!(step > 0.0)) throw UsageError("step size must be positive");
  const Space& space = *f.space();
  space.validate(x);
  const bool box = space.kind() == SpaceKind::TruncatedHilbertBox;

  if (const auto* a = std::get_if<Affine>(&f.form())) {
    return clamp_if_box(space, x.coords() - step * a->normal);
  }
  if (const auto* d = std::get_if<DistanceTo>(&f.form())) {
    return move_towards(space, x, project(d->body, x), step);
  }
  if (const auto* n = std::get_if<NormalizedDistance>(&f.form())) {
    return move_towards(space, x, n->anchor, step);
  }
  if (const auto* b = std::get_if<Busemann>(&f.form())) {
    return space.ray_point(x, b->direction, step);
  }
  if (const auto* s = std::get_if<InfShiftOf>(&f.form()); s != nullptr && s->members.size() == 1) {
    return flow_step(s->members[0].first, x, step);
  }
  if (const auto* c = std::get_if<ConvexCombination>(&f.form()); c != nullptr && c->terms.size() == 1) {
    return flow_step(c->terms[0].second, x, step);
  }
  if (space.kind() == SpaceKind::Euclidean) {
    if (const auto pieces = affine_pieces(f)) {
      if (auto y = prox_max_affine(*pieces, x.coords(), step)) return *y;
    }
  }
  if (space.is_euclidean_type() || box) return prox_generic_flat(f, x, step);
  return prox_generic_metric(f, x, step);
}

FlowTrajectory run_flow(const ScalarField& f, const Point& x, double horizon, double step, GradientMode mode) {
  if (!(horizon > 0.0) || !(step > 0.0)) throw UsageError("horizon and step must be positive");
  const Space& space = *f.space();
  const auto steps = static_cast<std::size_t>(std::max(1.0, std::ceil(horizon / step - 1e-9)));
  FlowTrajectory tr;
  tr.space = f.space();
  tr.start = x;
  tr.step = step;
  {
    std::ostringstream os;
    os << "proximal(step=" << step << ")";
    tr.step_rule = os.str();
  }
  tr.points.reserve(steps + 1);
  tr.points.push_back(x);
  tr.times.push_back(0.0);
  tr.values.push_back(evaluate(f, x));
  for (std::size_t k = 0; k < steps; ++k) {
    tr.points.push_back(flow_step(f, tr.points.back(), step));
    tr.times.push_back(static_cast<double>(k + 1) * step);
    tr.values.push_back(evaluate(f, tr.points.back()));
  }

  switch (mode) {
    case GradientMode::None:
      tr.grad_norms.assign(tr.points.size(), 0.0);
      break;
    case GradientMode::Displacement:
      for (std::size_t k = 0; k < steps; ++k)
        tr.grad_norms.push_back(space.distance(tr.points[k], tr.points[k + 1]) / step);
      tr.grad_norms.push_back(space.distance(tr.points.back(), flow_step(f, tr.points.back(), step)) / step);
      break;
    case GradientMode::Probe: {
      ProbeProfile profile;
      profile.scale = step;
      for (const auto& p : tr.points) tr.grad_norms.push_back(absolute_gradient(f, p, profile).value);
      break;
    }
  }

  if (mode != GradientMode::None) {
    for (std::size_t k = 0; k < steps; ++k) {
      const double g = tr.grad_norms[k];
      const double r = std::abs((tr.values[k + 1] - tr.values[k]) / step + g * g);
      tr.energy_residuals.push_back(r);
      tr.energy_constant = std::max(tr.energy_constant, r / step);
    }
  }
  return tr;
}

double semicontraction_check(const ScalarField& f, const Point& x, const Point& y, double horizon,
                             double step) {
  const Space& space = *f.space();
  const double d0 = space.distance(x, y);
  if (!(d0 > 0.0)) throw UsageError("semicontraction needs two distinct points");
  const auto tx = run_flow(f, x, horizon, step, GradientMode::None);
  const auto ty = run_flow(f, y, horizon, step, GradientMode::None);
  double ratio = 0.0;
  for (std::size_t k = 0; k < tx.points.size(); ++k)
    ratio = std::max(ratio, space.distance(tx.points[k], ty.points[k]) / d0);
  return ratio;
}

namespace {

double minkowski(const Vector& x, const Vector& y) {
  return -x(0) * y(0) + x.tail(x.size() - 1).dot(y.tail(y.size() - 1));
}

// Visual direction of the geodesic ray from `from` through `to`.
std::optional<Vector> flat_direction(const Point& from, const Point& to) {
  const Vector v = to.coords() - from.coords();
  if (v.norm() == 0.0) return std::nullopt;
  return Vector(v / v.norm());
}

std::optional<Vector> hyperbolic_direction(const Point& from, const Point& to) {
  const Vector& a = from.coords();
  const Vector w = to.coords() + minkowski(a, to.coords()) * a;
  const double n2 = minkowski(w, w);
  if (!(n2 > 0.0)) return std::nullopt;
  const Vector xi = a + w / std::sqrt(n2);
  Vector u = xi.tail(xi.size() - 1) / xi(0);
  return Vector(u / u.norm());
}

}  // namespace

EscapeReport velocity_of_escape(const FlowTrajectory& traj, double lipschitz) {
  if (!traj.space) throw UsageError("trajectory has no space");
  const Space& space = *traj.space;
  const std::size_t n = traj.points.size() - 1;
  if (traj.points.empty() || n < 8) throw UsageError("trajectory too short for four doubling times");
  EscapeReport rep;
  rep.lipschitz = lipschitz;
  const Point& x0 = traj.points.front();
  std::vector<std::size_t> idx;
  for (int j = 3; j >= 0; --j) idx.push_back(static_cast<std::size_t>(std::llround(static_cast<double>(n) / (1 << j))));
  for (std::size_t i : idx) {
    rep.doubling_times.push_back(traj.times[i]);
    rep.rates.push_back(space.distance(x0, traj.points[i]) / traj.times[i]);
  }
  const double d_end = space.distance(x0, traj.points[idx[3]]);
  const double d_half = space.distance(x0, traj.points[idx[2]]);
  rep.bounded = d_end - d_half <= 1e-9 * std::max(1.0, d_end);
  rep.velocity = rep.bounded ? 0.0 : d_end / traj.times[idx[3]];

  if (!traj.grad_norms.empty()) {
    rep.min_grad_norm = *std::min_element(traj.grad_norms.begin(), traj.grad_norms.end());
    rep.velocity_lower_bound = rep.min_grad_norm * rep.min_grad_norm / lipschitz;
  }
  if (rep.bounded) return rep;

  if (space.kind() == SpaceKind::Euclidean || space.kind() == SpaceKind::Hyperbolic) {
    std::vector<Vector> dirs;
    for (std::size_t i : idx) {
      const auto u = space.kind() == SpaceKind::Euclidean ? flat_direction(x0, traj.points[i])
                                                           : hyperbolic_direction(x0, traj.points[i]);
      if (!u) return rep;
      dirs.push_back(*u);
    }
    for (std::size_t j = 1; j < dirs.size(); ++j) rep.direction_residuals.push_back(angle_between(dirs[j - 1], dirs[j]));
    rep.direction = BoundaryDirection(dirs.back());
  } else if (space.kind() == SpaceKind::MetricTree) {
    const auto& tree = dynamic_cast<const TreeSpace&>(space);
    std::vector<std::optional<std::size_t>> rays;
    for (std::size_t i : idx) {
      const auto& loc = traj.points[i].tree_location();
      rays.push_back(tree.tree().edges[loc.edge].is_ray() ? std::optional(loc.edge) : std::nullopt);
    }
    for (std::size_t j = 1; j < rays.size(); ++j)
      rep.direction_residuals.push_back(rays[j] && rays[j] == rays[j - 1] ? 0.0 : std::numbers::pi);
    if (rays.back()) rep.direction = BoundaryDirection(TreeRay{*rays.back()});
  }
  rep.converged = rep.direction.has_value() && !rep.direction_residuals.empty() &&
                  rep.direction_residuals.back() < default_tolerances().angular;
  return rep;
}

MonotoneReport monotone_point_check(const ScalarField& f, const BoundaryDirection& u,
                                    const std::vector<Point>& basepoints, double ray_length, int samples) {
  const Space& space = *f.space();
  space.validate(u);
  if (basepoints.empty() || samples < 1 || !(ray_length > 0.0)) throw UsageError("monotone check needs rays");
  MonotoneReport rep;
  rep.max_slope = -std::numeric_limits<double>::infinity();
  const double dt = ray_length / samples;
  for (const auto& b : basepoints) {
    double prev = evaluate(f, b);
    for (int j = 1; j <= samples; ++j) {
      const double v = evaluate(f, space.ray_point(b, u, dt * j));
      rep.max_slope = std::max(rep.max_slope, (v - prev) / dt);
      prev = v;
    }
  }
  rep.monotone = rep.max_slope <= 1e-9;
  return rep;
}

}  // namespace hadamard
