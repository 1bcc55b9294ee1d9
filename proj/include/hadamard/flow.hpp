#pragma once

#include "hadamard/field.hpp"
#include "hadamard/gradient.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hadamard {

/// How run_flow measures |grad(-f)| at each recorded point.
enum class GradientMode {
  None,          // no gradient estimate (zeros)
  Displacement,  // d(x_k, x_{k+1}) / step, the speed of the discrete flow
  Probe,         // absolute_gradient with probe scale equal to the step
};

struct FlowTrajectory {
  SpacePtr space;
  Point start;
  double step = 0.0;
  std::vector<double> times;
  std::vector<Point> points;
  std::vector<double> values;
  std::vector<double> grad_norms;
  std::string step_rule;
  /// |(f_{k+1} - f_k) / step + g_k^2| per step.
  std::vector<double> energy_residuals;
  /// max residual / step.
  double energy_constant = 0.0;
};

struct EscapeReport {
  double velocity = 0.0;
  std::optional<BoundaryDirection> direction;
  std::vector<double> doubling_times;
  /// d(start, x(t)) / t at the doubling times.
  std::vector<double> rates;
  /// Angles between directions at consecutive doubling times.
  std::vector<double> direction_residuals;
  bool converged = false;
  bool bounded = false;
  double min_grad_norm = 0.0;
  double lipschitz = 1.0;
  /// eps^2 / L with eps the smallest recorded gradient norm.
  double velocity_lower_bound = 0.0;
};

struct MonotoneReport {
  bool monotone = false;
  double max_slope = 0.0;
};

/// Proximal step argmin_y f(y) + d(x, y)^2 / (2 step). Closed forms cover
/// affine, distance, Busemann and max-of-affine fields; anything else uses a
/// descent along steepest sampled directions with golden-section line search.
Point flow_step(const ScalarField& f, const Point& x, double step);

FlowTrajectory run_flow(const ScalarField& f, const Point& x, double horizon, double step,
                        GradientMode mode = GradientMode::Displacement);

/// max over recorded times of d(phi_t x, phi_t y) / d(x, y).
double semicontraction_check(const ScalarField& f, const Point& x, const Point& y, double horizon,
                             double step);

/// Escape rate and limit direction from the doubling times T/8, T/4, T/2, T.
EscapeReport velocity_of_escape(const FlowTrajectory& traj, double lipschitz = 1.0);

/// Samples f along rays towards u from each basepoint; monotone iff every
/// sampled slope is <= 1e-9.
MonotoneReport monotone_point_check(const ScalarField& f, const BoundaryDirection& u,
                                    const std::vector<Point>& basepoints, double ray_length = 10.0,
                                    int samples = 16);

}  // namespace hadamard
