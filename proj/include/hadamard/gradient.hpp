#pragma once

#include "hadamard/field.hpp"

#include <vector>

namespace hadamard {

/// Probe schedule for the absolute gradient. The radii are scale * 2^-k for
/// k = 0..levels-1 unless `radii` is given explicitly (decreasing).
struct ProbeProfile {
  double scale = 1.0;
  int levels = 11;
  std::size_t directions = 64;
  int refine_passes = 2;
  std::vector<double> radii;
};

struct GradientEstimate {
  Point point;
  double value = 0.0;
  /// The last two radii disagree by more than 1e-6: the limit is not resolved.
  bool at_sampling_resolution = false;
  /// Per-radius maxima are non-decreasing as the radius shrinks (within 1e-7).
  bool monotone = true;
  std::vector<double> probe_radii;
  std::vector<double> per_radius_max;
};

/// |grad_p(-f)| = max(0, limsup (f(p) - f(x)) / d(p, x)), estimated on probe
/// spheres of shrinking radius. Manifold-like spaces sample `directions`
/// chart directions and refine the best one by golden-section rotations; the
/// best direction is carried to the next radius. Trees enumerate branches.
GradientEstimate absolute_gradient(const ScalarField& f, const Point& p, const ProbeProfile& profile = {});

}  // namespace hadamard
