#pragma once

#include "hadamard/field.hpp"
#include "hadamard/flow.hpp"

#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace hadamard {

/// Concave piecewise-affine field on R^2 inside the angle spanned by
/// v+- = (cos a, +-sin a). Direction of x_n: a + beta q^n above the angle for
/// odd n, its mirror for even n. Norms: |x_1| = 1, |x_{n+1}| = rho <x_n, u_{n+1}>
/// with u_{n+1} the unit direction of x_{n+1}.
struct PetruninConfig {
  double alpha = std::numbers::pi / 6;
  /// Defaults to alpha / 2.
  std::optional<double> beta;
  double q = 0.8;
  double rho = 0.5;
  std::size_t segments = 20;
};

/// Index n = 1..N is stored at n - 1.
struct PetruninInstance {
  PetruninConfig config;
  Vector v_plus;
  Vector v_minus;
  std::vector<Vector> x;
  /// p_1 = v-, p_{n+1} = p_n + t x_n on the ray of the parity of n + 1.
  std::vector<Vector> p;
  /// C_1 = 0, C_{n+1} = C_n + <x_n - x_{n+1}, p_{n+1}>.
  std::vector<double> c;
  /// inf_n (<w, x_n> + C_n).
  ScalarField field;
};

/// Throws ConstructionError naming the violated side condition.
PetruninInstance build_petrunin(const PetruninConfig& config = {});

struct InvariantCheck {
  std::string id;
  double residual = 0.0;
  bool holds = false;
};

/// The five structural conditions read literally ("positivity",
/// "recursion", "norm-decay", "anchors", "shift-identity"), followed by the
/// conditions the construction actually realizes ("segment-parallel",
/// "active-piece").
std::vector<InvariantCheck> petrunin_invariants(const PetruninInstance& instance, double tol = 1e-12);

struct OscillationEntry {
  std::size_t n = 0;
  double angle = 0.0;
  double norm = 0.0;
};

struct OscillationReport {
  std::vector<OscillationEntry> entries;
  /// Every angle is +alpha (even n) or -alpha (odd n) within 1e-12.
  bool alternating = false;
  bool norms_increasing = false;
};

OscillationReport oscillation_report(const PetruninInstance& instance);

struct FlowAgreement {
  double step = 0.0;
  double max_deviation = 0.0;
  double bound = 0.0;
  bool within = false;
  /// Segments fully traversed by the discrete trajectory.
  std::size_t segments_covered = 0;
  /// First segment whose nearby trajectory points exceed the bound.
  std::optional<std::size_t> first_divergence_segment;
  /// Largest angle between a step and x_1 while the trajectory is on the
  /// first segment.
  double first_segment_angle = 0.0;
  EscapeReport escape;
  FlowTrajectory trajectory;
};

/// Ascends f from p_1 (descent of -f) until the polygon ends or max_steps
/// is reached, and measures the Hausdorff distance to the polygon through
/// the p_n over the covered range.
FlowAgreement flow_agreement_check(const PetruninInstance& instance, double step,
                                   std::size_t max_steps = 200000);

struct C0Entry {
  double n = 0.0;
  double sup_value = 0.0;
};

struct C0Report {
  /// sup over probes of |d(x, n e_n) - n| for growing n.
  std::vector<C0Entry> hilbert;
  /// n * sup_value at the largest n; tends to max |x|^2 / 2.
  double hilbert_rate = 0.0;
  /// max |b_ray(x) - d(o, x)| over probes off the ray, all rays.
  double tree_off_ray_error = 0.0;
  /// max |b_ray(x) + d(o, x)| over probes on the ray.
  double tree_on_ray_error = 0.0;
};

/// Normalized distances to n e_n in R^d, and Busemann functions of a star
/// tree with `rays` infinite legs.
C0Report c0_convergence_demos(std::size_t d = 64, std::size_t rays = 6);

}  // namespace hadamard
