#pragma once

#include <string>

namespace hadamard {

/// Numerical thresholds shared by every module. Defaults follow the library
/// contract; a profile can be loaded from JSON (see io.hpp) or from the
/// HADAMARD_TOLERANCE_PROFILE environment variable.
struct ToleranceProfile {
  double membership = 1e-12;       // point-in-space constraints
  double metric = 1e-9;            // metric axioms, CAT(0) comparison sign
  double geodesic = 1e-10;         // geodesic interpolation accuracy
  double projection = 1e-8;        // nearest-point projection optimality
  double dykstra_stop = 1e-10;     // cyclic projection stop criterion
  int dykstra_max_iterations = 10000;
  double recession = 1e-12;        // <u, a> <= tol for half-space recession
  double convexity = 1e-9;         // convexity defect sign
  double circum_support = 1e-7;    // support set / enclosing slack of circumcenters
  double jung_slack = 1e-7;
  double helly = 1e-6;
  double angular = 1e-3;           // boundary-direction acceptance (radians)
  double start_independence = 2e-3;
  double semicontraction = 1e-6;
  double gradient_floor = 1e-3;
  double limit_field = 1e-6;       // truncation stability of limit fields
  double emptiness_threshold = 1e6;  // d(o, X_k) certifying empty intersection
  double petrunin = 1e-12;
};

/// Process-wide default profile. Reads HADAMARD_TOLERANCE_PROFILE once (a
/// path to a JSON file or an inline JSON object) and falls back to the
/// built-in values.
const ToleranceProfile& default_tolerances();

/// Replaces the process-wide profile. Call before any computation starts;
/// not safe while other threads read the profile.
void set_default_tolerances(const ToleranceProfile& profile);

}  // namespace hadamard
