#pragma once

#include <cmath>
#include <utility>

namespace hadamard::detail {

/// Golden-section search for a maximum of a unimodal function on [a, b].
/// Returns (argmax, value), also comparing against both end points.
template <class F>
std::pair<double, double> golden_max(F&& fn, double a, double b, double tol, int max_iter = 200) {
  constexpr double inv_phi = 0.6180339887498949;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = fn(c);
  double fd = fn(d);
  for (int it = 0; it < max_iter && (b - a) > tol; ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = fn(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = fn(d);
    }
  }
  std::pair<double, double> best = fc >= fd ? std::pair{c, fc} : std::pair{d, fd};
  for (double x : {a, b}) {
    const double fx = fn(x);
    if (fx > best.second) best = {x, fx};
  }
  return best;
}

}  // namespace hadamard::detail
