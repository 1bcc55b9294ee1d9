#pragma once

#include "hadamard/circumcenter.hpp"
#include "hadamard/space.hpp"

#include <optional>
#include <vector>

namespace hadamard {

/// sqrt(n / (2 (n + 1))); 0 for n = 0 (a point).
double jung_bound(int n);

struct JungReport {
  int n = 0;
  double diameter = 0.0;
  double radius = 0.0;
  double ratio = 0.0;
  double bound = 0.0;
  double slack = 0.0;
  /// Probe radius of the bucket in telescopic scans.
  std::optional<double> scale_bucket;
  /// Support size of the circumcenter.
  std::size_t support_size = 0;
  /// ratio <= bound + allowance (tolerance, or delta in telescopic scans).
  bool holds = true;
};

/// Diameter, circumradius and slack of the n-dimensional Jung inequality.
JungReport jung_check(const Space& space, const std::vector<Point>& points, int n);

struct HellyReport {
  /// Largest circumradius over subsets of size <= n + 1.
  double max_subset_radius = 0.0;
  double whole_radius = 0.0;
  /// Every small subset has circumradius <= r.
  bool premise = false;
  /// The whole set has circumradius <= r + tolerance.
  bool conclusion = false;
  /// premise implies conclusion.
  bool consistent = true;
  std::size_t subsets_checked = 0;
};

/// Exhaustive check over subsets of size <= n + 1 (at most 12 points).
HellyReport helly_subset_check(const Space& space, const std::vector<Point>& points, int n, double r);

struct DimensionEstimate {
  /// Smallest n whose Jung bound accommodates the set; empty when the ratio
  /// exceeds every finite bound.
  std::optional<int> n;
  bool exceeds_all_bounds = false;
  double ratio = 0.0;
};

DimensionEstimate dimension_lower_bound(const Space& space, const std::vector<Point>& points);

/// Jung checks restricted to subsets of diameter > min_diameter: balls around
/// each point at radii min_diameter * 2^k, deduplicated. Each report holds iff
/// ratio <= delta + jung_bound(n).
std::vector<JungReport> telescopic_jung_scan(const Space& space, const std::vector<Point>& points, int n,
                                             double delta, double min_diameter);

/// arccos(-1 / (n + 1)).
double k_n(int n);
/// Diameter of the regular spherical n-simplex of circumradius r < pi/2.
double s_n(int n, double r);
/// Circumradius of the regular hyperbolic n-simplex of diameter d, from a
/// root solve on a symmetric hyperboloid placement.
double r_n(int n, double d);
/// Closed form of r_n for cross-checking: sinh^2 r = (cosh d - 1) n / (n + 1).
double r_n_closed_form(int n, double d);

/// Vertices of the regular n-simplex in R^n with unit edges, centred at 0.
std::vector<Vector> regular_simplex(int n);

}  // namespace hadamard
