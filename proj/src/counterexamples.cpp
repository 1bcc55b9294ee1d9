#include "hadamard/counterexamples.hpp"

#include "hadamard/error.hpp"
#include "hadamard/tree.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace hadamard {
namespace {

Vector polar(double angle) {
  Vector v(2);
  v << std::cos(angle), std::sin(angle);
  return v;
}

double cross(const Vector& a, const Vector& b) { return a(0) * b(1) - a(1) * b(0); }

double segment_distance(const Vector& a, const Vector& b, const Vector& x) {
  const Vector ab = b - a;
  const double t = std::clamp((x - a).dot(ab) / ab.squaredNorm(), 0.0, 1.0);
  return (a + t * ab - x).norm();
}

// Even n sits on the upper ray.
bool upper(std::size_t n) { return n % 2 == 0; }

}  // namespace

PetruninInstance build_petrunin(const PetruninConfig& config) {
  const double a = config.alpha;
  const double beta = config.beta.value_or(a / 2);
  const std::size_t n_seg = config.segments;
  if (!(a > 0.0 && a < std::numbers::pi / 4)) throw UsageError("half angle must lie in (0, pi/4)");
  if (n_seg < 3) throw UsageError("Petrunin instance needs at least 3 segments");
  if (!(beta > 0.0) || !(config.q > 0.0 && config.q < 1.0) || !(config.rho > 0.0 && config.rho < 1.0))
    throw UsageError("Petrunin schedule needs beta > 0 and q, rho in (0, 1)");

  PetruninInstance inst{config, polar(a), polar(-a), {}, {}, {}, affine_field(make_euclidean(2), Vector::Zero(2), 0)};
  for (std::size_t n = 1; n <= n_seg; ++n) {
    const double off = a + beta * std::pow(config.q, static_cast<double>(n));
    const Vector u = polar(n % 2 == 1 ? off : -off);
    if (n == 1) {
      inst.x.push_back(u);
      continue;
    }
    const Vector& prev = inst.x.back();
    const double along = prev.dot(u);
    if (!(along > 0.0)) throw ConstructionError("consecutive directions are not acute; decrease alpha or beta");
    inst.x.push_back(config.rho * along * u);
  }
  for (std::size_t n = 1; n <= n_seg; ++n) {
    const Vector& x = inst.x[n - 1];
    if (!(x.dot(inst.v_plus) > 0.0) || !(x.dot(inst.v_minus) > 0.0))
      throw ConstructionError("positivity <x_n, v+-> > 0 fails; decrease alpha or beta");
  }

  inst.p.push_back(inst.v_minus);
  inst.c.push_back(0.0);
  for (std::size_t n = 1; n < n_seg; ++n) {
    const Vector& pn = inst.p.back();
    const Vector& xn = inst.x[n - 1];
    const Vector& target = upper(n + 1) ? inst.v_plus : inst.v_minus;
    // Solve cross(target, p_n + t u) = 0 for the unit direction u of x_n.
    const Vector u = xn.normalized();
    const double t = -cross(target, pn) / cross(target, u);
    const double s = (pn + t * u).dot(target);
    if (!(t > 0.0) || !(s > 0.0)) throw ConstructionError("segment does not reach the opposite ray");
    const Vector next = s * target;
    inst.p.push_back(next);
    inst.c.push_back(inst.c.back() + (xn - inst.x[n]).dot(next));
  }

  const auto plane = make_euclidean(2);
  std::vector<std::pair<ScalarField, double>> pieces;
  for (std::size_t n = 0; n < n_seg; ++n) pieces.emplace_back(affine_field(plane, inst.x[n], 0.0), inst.c[n]);
  inst.field = inf_shift_of(std::move(pieces));
  return inst;
}

std::vector<InvariantCheck> petrunin_invariants(const PetruninInstance& inst, double tol) {
  const auto& x = inst.x;
  const auto& p = inst.p;
  const std::size_t n_seg = x.size();
  std::vector<InvariantCheck> out;

  double pos = std::numeric_limits<double>::infinity();
  for (const auto& xn : x) pos = std::min({pos, xn.dot(inst.v_plus), xn.dot(inst.v_minus)});
  out.push_back({"positivity", pos, pos > 0.0});

  double rec = 0.0;
  for (std::size_t n = 2; n <= n_seg; ++n) {
    const Vector& cur = x[n - 1];
    const Vector& prev = x[n - 2];
    const double r = n % 2 == 0 ? cur.dot(inst.v_minus) - prev.dot(inst.v_plus)
                                : cur.dot(inst.v_plus) - prev.dot(inst.v_minus);
    rec = std::max(rec, std::abs(r));
  }
  out.push_back({"recursion", rec, rec <= tol});

  double decay = -std::numeric_limits<double>::infinity();
  for (std::size_t n = 1; n < n_seg; ++n) decay = std::max(decay, x[n].norm() / x[n - 1].norm());
  out.push_back({"norm-decay", decay, decay < 1.0});

  // p_1 = v-, parity of the rays, and p_n - p_{n-1} parallel to x_n.
  double anchors = (p[0] - inst.v_minus).norm();
  for (std::size_t n = 1; n <= p.size(); ++n) {
    const Vector& ray = upper(n) ? inst.v_plus : inst.v_minus;
    anchors = std::max(anchors, std::abs(cross(ray, p[n - 1])) / std::max(1.0, p[n - 1].norm()));
    if (!(ray.dot(p[n - 1]) > 0.0)) anchors = std::numeric_limits<double>::infinity();
  }
  double literal_parallel = 0.0;
  double parallel = 0.0;
  for (std::size_t n = 2; n <= p.size(); ++n) {
    const Vector d = (p[n - 1] - p[n - 2]).normalized();
    literal_parallel = std::max(literal_parallel, std::abs(cross(d, x[n - 1].normalized())));
    parallel = std::max(parallel, std::abs(cross(d, x[n - 2].normalized())));
  }
  const double anchor_res = std::max(anchors, literal_parallel);
  out.push_back({"anchors", anchor_res, anchor_res <= tol});

  double shift = 0.0;
  for (std::size_t n = 1; n < p.size(); ++n) {
    const Vector& q = p[n];
    const double lhs = q.dot(x[n - 1]) - q.dot(x[n]);
    const double r = std::abs(lhs - (inst.c[n] - inst.c[n - 1])) / std::max(1.0, std::abs(lhs));
    shift = std::max(shift, r);
  }
  out.push_back({"shift-identity", shift, shift <= tol});

  out.push_back({"segment-parallel", parallel, parallel <= tol});

  // Piece n is the minimizer on the open segment (p_n, p_{n+1}).
  double active = 0.0;
  for (std::size_t n = 1; n < p.size(); ++n) {
    for (int k = 1; k < 50; ++k) {
      const Vector w = p[n - 1] + (k / 50.0) * (p[n] - p[n - 1]);
      if (active_member(inst.field, Point(w)) != n - 1) active = std::numeric_limits<double>::infinity();
      const double own = w.dot(x[n - 1]) + inst.c[n - 1];
      active = std::max(active, std::abs(inst.field(Point(w)) - own) / std::max(1.0, std::abs(own)));
    }
  }
  out.push_back({"active-piece", active, active <= 1e-10});
  return out;
}

OscillationReport oscillation_report(const PetruninInstance& inst) {
  OscillationReport rep;
  rep.alternating = true;
  rep.norms_increasing = true;
  const double a = inst.config.alpha;
  for (std::size_t n = 1; n <= inst.p.size(); ++n) {
    const Vector& q = inst.p[n - 1];
    OscillationEntry e{n, std::atan2(q(1), q(0)), q.norm()};
    if (std::abs(e.angle - (upper(n) ? a : -a)) > 1e-12) rep.alternating = false;
    if (!rep.entries.empty() && !(e.norm > rep.entries.back().norm)) rep.norms_increasing = false;
    rep.entries.push_back(e);
  }
  return rep;
}

FlowAgreement flow_agreement_check(const PetruninInstance& inst, double step, std::size_t max_steps) {
  if (!(step > 0.0)) throw UsageError("step must be positive");
  const auto& p = inst.p;
  const auto& x = inst.x;
  // Time to traverse segment n at speed |x_n|.
  double horizon = 0.0;
  for (std::size_t n = 1; n < p.size(); ++n) horizon += (p[n] - p[n - 1]).norm() / x[n - 1].norm();
  horizon = std::min(horizon, step * static_cast<double>(max_steps));

  FlowAgreement rep;
  rep.step = step;
  rep.bound = 10.0 * step;
  rep.trajectory = run_flow(negate(inst.field), Point(p[0]), horizon, step);
  const auto& pts = rep.trajectory.points;

  auto nearest_segment = [&](const Vector& w, double* dist) {
    std::size_t best = 1;
    double bd = std::numeric_limits<double>::infinity();
    for (std::size_t n = 1; n < p.size(); ++n) {
      const double d = segment_distance(p[n - 1], p[n], w);
      if (d < bd) {
        bd = d;
        best = n;
      }
    }
    *dist = bd;
    return best;
  };

  for (std::size_t k = 0; k < pts.size(); ++k) {
    const Vector& w = pts[k].coords();
    double d = 0.0;
    const std::size_t seg = nearest_segment(w, &d);
    rep.max_deviation = std::max(rep.max_deviation, d);
    if (d > rep.bound && !rep.first_divergence_segment) rep.first_divergence_segment = seg;
    if (seg == 1 && k + 1 < pts.size() && (w - p[1]).norm() > 2.0 * step) {
      const Vector s = pts[k + 1].coords() - w;
      if (s.norm() > 0.0) rep.first_segment_angle = std::max(rep.first_segment_angle, angle_between(s, x[0]));
    }
  }
  // Covered vertices must be approached by the trajectory as well.
  double last_dist = 0.0;
  const std::size_t last_seg = nearest_segment(pts.back().coords(), &last_dist);
  rep.segments_covered = last_seg - 1;
  for (std::size_t n = 1; n <= last_seg; ++n) {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& q : pts) d = std::min(d, (q.coords() - p[n - 1]).norm());
    rep.max_deviation = std::max(rep.max_deviation, d);
    if (d > rep.bound && !rep.first_divergence_segment) rep.first_divergence_segment = n;
  }
  rep.within = rep.max_deviation <= rep.bound;
  rep.escape = velocity_of_escape(rep.trajectory);
  return rep;
}

C0Report c0_convergence_demos(std::size_t d, std::size_t rays) {
  if (d < 2) throw UsageError("C0 demo needs dimension >= 2");
  if (rays < 2) throw UsageError("C0 demo needs at least two rays");
  C0Report rep;
  const auto space = make_euclidean(d);
  const auto dim = static_cast<Eigen::Index>(d);
  std::vector<Point> probes{Vector(Vector::Zero(dim))};
  for (Eigen::Index i = 0; i < 2; ++i) {
    Vector e = Vector::Zero(dim);
    e(i) = 1.0;
    probes.emplace_back(e);
    probes.emplace_back(Vector(-e));
  }
  for (std::size_t n = 1; n <= d; n *= 2) {
    Vector anchor = Vector::Zero(dim);
    anchor(static_cast<Eigen::Index>(n - 1)) = static_cast<double>(n);
    const auto f = normalized_distance(space, anchor, space->origin());
    double sup = 0.0;
    for (const auto& q : probes) sup = std::max(sup, std::abs(f(q)));
    rep.hilbert.push_back({static_cast<double>(n), sup});
  }
  rep.hilbert_rate = rep.hilbert.back().n * rep.hilbert.back().sup_value;

  const auto tree = make_tree(MetricTree::star(std::vector<double>(rays, std::numeric_limits<double>::infinity())));
  const auto& ts = dynamic_cast<const TreeSpace&>(*tree);
  const Point o = tree->origin();
  for (std::size_t r : ts.rays()) {
    const auto b = busemann_field(tree, TreeRay{r}, o);
    for (std::size_t e : ts.rays()) {
      for (double t : {0.5, 1.0, 2.0, 4.0, 8.0}) {
        const Point q = ts.at(e, t);
        const double dq = tree->distance(o, q);
        if (e == r) {
          rep.tree_on_ray_error = std::max(rep.tree_on_ray_error, std::abs(b(q) + dq));
        } else {
          rep.tree_off_ray_error = std::max(rep.tree_off_ray_error, std::abs(b(q) - dq));
        }
      }
    }
  }
  return rep;
}

}  // namespace hadamard
