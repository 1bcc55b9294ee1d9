#include "hadamard/gradient.hpp"

#include "hadamard/error.hpp"
#include "numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace hadamard {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::vector<double> schedule(const ProbeProfile& profile) {
  if (!profile.radii.empty()) {
    for (std::size_t i = 0; i < profile.radii.size(); ++i) {
      if (!(profile.radii[i] > 0.0) || (i > 0 && profile.radii[i] >= profile.radii[i - 1]))
        throw UsageError("probe radii must be positive and strictly decreasing");
    }
    return profile.radii;
  }
  if (profile.levels <= 0 || !(profile.scale > 0.0)) throw UsageError("probe schedule is empty");
  std::vector<double> out;
  for (int k = 0; k < profile.levels; ++k) out.push_back(std::ldexp(profile.scale, -k));
  return out;
}

// Orthonormal basis of the complement of the unit vector u in R^k.
std::vector<Vector> complement_basis(const Vector& u) {
  std::vector<Vector> basis;
  for (Eigen::Index i = 0; i < u.size() && static_cast<Eigen::Index>(basis.size()) + 1 < u.size(); ++i) {
    Vector v = Vector::Zero(u.size());
    v(i) = 1.0;
    v -= v.dot(u) * u;
    for (const auto& b : basis) v -= v.dot(b) * b;
    const double n = v.norm();
    if (n > 1e-8) basis.push_back(v / n);
  }
  return basis;
}

}  // namespace

GradientEstimate absolute_gradient(const ScalarField& f, const Point& p, const ProbeProfile& profile) {
  const Space& space = *f.space();
  space.validate(p);
  GradientEstimate est;
  est.point = p;
  est.probe_radii = schedule(profile);
  const double fp = evaluate(f, p);

  const auto dim = space.chart_dimension(p);
  std::optional<Vector> carried;
  for (double h : est.probe_radii) {
    double best = kNegInf;
    if (dim) {
      auto slope = [&](const Vector& u) {
        const Point x = space.chart_exp(p, u, h);
        const double d = space.distance(p, x);
        return d > 0.0 ? (fp - evaluate(f, x)) / d : kNegInf;
      };
      Vector best_u;
      auto consider = [&](const Vector& u) {
        const double s = slope(u);
        if (s > best) {
          best = s;
          best_u = u;
        }
      };
      for (const auto& u : unit_directions(*dim, profile.directions)) consider(u);
      if (carried) consider(*carried);
      if (*dim >= 2 && std::isfinite(best)) {
        const double bracket =
            *dim == 2 ? 2.0 * std::numbers::pi / static_cast<double>(std::max<std::size_t>(profile.directions, 4))
                      : 0.6;
        for (int pass = 0; pass < profile.refine_passes; ++pass) {
          for (const auto& e : complement_basis(best_u)) {
            const Vector base = best_u;
            auto rotated = [&](double th) { return Vector(std::cos(th) * base + std::sin(th) * e); };
            const auto [th, s] =
                detail::golden_max([&](double t) { return slope(rotated(t)); }, -bracket, bracket, 1e-10);
            if (s > best) {
              best = s;
              best_u = rotated(th);
              best_u /= best_u.norm();
            }
          }
        }
      }
      if (std::isfinite(best)) carried = best_u;
    } else {
      for (const auto& x : space.probe_sphere(p, h, profile.directions)) {
        const double d = space.distance(p, x);
        if (d > 0.0) best = std::max(best, (fp - evaluate(f, x)) / d);
      }
    }
    est.per_radius_max.push_back(best);
  }

  const auto& m = est.per_radius_max;
  for (std::size_t i = 1; i < m.size(); ++i) {
    if (m[i] < m[i - 1] - 1e-7) est.monotone = false;
  }
  est.value = std::max(0.0, m.back());
  if (m.size() >= 2 && std::abs(m.back() - m[m.size() - 2]) > 1e-6) est.at_sampling_resolution = true;
  return est;
}

}  // namespace hadamard
