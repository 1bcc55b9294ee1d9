// Acceptance run: one PASS/FAIL line per criterion. Exits non-zero when any
// criterion fails.

#include "hadamard/circumcenter.hpp"
#include "hadamard/counterexamples.hpp"
#include "hadamard/filtering.hpp"
#include "hadamard/flow.hpp"
#include "hadamard/generators.hpp"
#include "hadamard/jung.hpp"
#include "hadamard/product.hpp"
#include "hadamard/tolerance.hpp"
#include "hadamard/tree.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>

using namespace hadamard;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Verdict {
  bool passed = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// 1. Jung inequality on random sets, equality on regular simplices.
Verdict jung_bound_criterion() {
  const auto start = std::chrono::steady_clock::now();
  double worst = kInf, simplex = 0.0;
  for (int n = 1; n <= 6; ++n) {
    const auto s = make_euclidean(static_cast<std::size_t>(n));
    std::mt19937_64 rng(100 + n);
    std::uniform_int_distribution<std::size_t> size(2, 16);
    for (int i = 0; i < 500; ++i) worst = std::min(worst, jung_check(*s, random_point_set(*s, rng, size(rng)), n).slack);
    const auto v = regular_simplex(n);
    simplex = std::max(simplex, std::abs(jung_check(*s, std::vector<Point>(v.begin(), v.end()), n).slack));
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {worst >= -1e-7 && simplex <= 1e-7 && secs < 60.0,
          fmt("min slack %.3g, simplex |slack| %.3g, %.1f s", worst, simplex, secs)};
}

// 2. Circumradius against an exhaustive minimal-ball oracle.
Verdict circumcenter_criterion() {
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  int count = 0;
  for (std::size_t d : {2u, 3u}) {
    const auto s = make_euclidean(d);
    std::mt19937_64 rng(200 + d);
    std::uniform_int_distribution<std::size_t> size(1, 10);
    for (int i = 0; i < 500; ++i, ++count) {
      const auto pts = random_point_set(*s, rng, size(rng));
      std::vector<oracle::Vec> raw;
      for (const auto& p : pts) raw.push_back(p.coords());
      worst = std::max(worst, std::abs(circumcenter(*s, pts).radius - oracle::minimal_ball(raw).radius));
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {worst <= 1e-7 && secs < 30.0, fmt("%d instances, max |radius error| %.3g, %.1f s", count, worst, secs)};
}

// 3. Small subsets within radius r force the whole set within r.
Verdict helly_criterion() {
  bool ok = true;
  double worst = -kInf;
  for (int n : {2, 3}) {
    const auto s = make_euclidean(static_cast<std::size_t>(n));
    std::mt19937_64 rng(300 + n);
    for (int i = 0; i < 200; ++i) {
      const auto pts = random_point_set(*s, rng, 8);
      const double r = helly_subset_check(*s, pts, n, kInf).max_subset_radius;
      const auto rep = helly_subset_check(*s, pts, n, r);
      ok = ok && rep.premise && rep.consistent;
      worst = std::max(worst, rep.whole_radius - r);
    }
  }
  return {ok && worst <= 1e-6, fmt("400 sets, max whole-minus-subset radius %.3g", worst)};
}

// 4. Flows of convex fields do not expand distances.
Verdict semicontraction_criterion() {
  const auto s = make_euclidean(3);
  std::mt19937_64 rng(400);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto f = random_max_affine(s, rng);
    for (int k = 0; k < 100; ++k)
      worst = std::max(worst, semicontraction_check(f, s->sample(rng, 2.0), s->sample(rng, 2.0), 0.2, 1e-3));
  }
  return {worst <= 1 + 1e-6, fmt("max expansion ratio %.12f", worst)};
}

// 5. Energy residual constant stable under halving the step.
Verdict energy_criterion() {
  const auto s = make_euclidean(2);
  std::mt19937_64 rng(500);
  double worst = 1.0, cmax = 0.0;
  for (int i = 0; i < 50; ++i) {
    const auto f = random_smooth_field(s, rng, 3, 3.0);
    const auto x = s->sample(rng, 1.0);
    const double c1 = run_flow(f, x, 1.0, 1e-3).energy_constant;
    const double c2 = run_flow(f, x, 1.0, 5e-4).energy_constant;
    worst = std::max(worst, std::max(c1, c2) / std::max(std::min(c1, c2), 1e-300));
    cmax = std::max(cmax, c1);
  }
  return {worst <= 2.0, fmt("50 fields, max C %.3g, worst ratio C(l)/C(l/2) %.3f", cmax, worst)};
}

struct FamilyRun {
  int n;
  NestedFamily family;
  LimitField limit;
};

std::vector<FamilyRun>& families() {
  static std::vector<FamilyRun> runs = [] {
    std::vector<FamilyRun> out;
    for (int n = 1; n <= 3; ++n) {
      const auto s = make_euclidean(static_cast<std::size_t>(n));
      std::mt19937_64 rng(600 + n);
      for (int i = 0; i < 20; ++i) {
        auto fam = random_nested_family(s, rng);
        auto limit = build_limit_field(fam);
        out.push_back({n, std::move(fam), std::move(limit)});
      }
    }
    return out;
  }();
  return runs;
}

// 6. Lower bound on the gradient of limit fields.
Verdict gradient_floor_criterion() {
  const ProbeProfile probes{1.0, 6, 32, 1, {}};
  bool ok = std::abs(gradient_floor(1) - 0.146447) <= 1e-6;
  double margin = kInf;
  for (const auto& run : families()) {
    const auto rep = gradient_floor_check(run.limit, run.n, {}, probes);
    ok = ok && rep.passes;
    margin = std::min(margin, rep.min_observed - rep.floor);
  }
  return {ok, fmt("60 families, floor(1) %.6f, min observed minus floor %.3g", gradient_floor(1), margin)};
}

// 7. The flow's limit direction lies in every body at infinity.
Verdict infinity_criterion() {
  bool ok = true;
  double gap = 0.0, start_gap = 0.0, angle = 0.0;
  for (const auto& run : families()) {
    const auto cert = intersection_at_infinity(run.limit);
    ok = ok && cert.direction && cert.in_every_body && cert.start_independent;
    gap = std::max(gap, cert.max_gap);
    start_gap = std::max(start_gap, cert.start_gap);
    if (!cert.direction) continue;
    const auto mr = monotone_radius_check(run.family, *cert.direction);
    ok = ok && mr.passes;
    angle = std::max(angle, mr.max_angle);
  }
  ok = ok && gap <= 1e-3 && start_gap <= 2e-3 && angle <= std::numbers::pi / 2 + 1e-3;
  return {ok, fmt("60 families, max cone gap %.3g, max start gap %.3g, max monotone angle %.4f", gap, start_gap,
                  angle)};
}

// 8. Curvature constants.
Verdict constants_criterion() {
  const double k1 = k_n(1), exact = 2 * std::numbers::pi / 3;
  bool ok = std::abs(k1 - exact) <= 4 * std::numeric_limits<double>::epsilon() * exact;
  double worst = 0.0;
  for (int n = 1; n <= 4; ++n) {
    const double b = oracle::jung_ratio(n);
    worst = std::max({worst, std::abs(s_n(n, 1e-3) / 1e-3 - 1 / b), std::abs(r_n(n, 1e-3) / 1e-3 - b)});
  }
  ok = ok && worst <= 1e-4;
  return {ok, fmt("k_1 %.17g, max limit error %.3g", k1, worst)};
}

// 9. The oscillating concave field.
Verdict petrunin_criterion() {
  PetruninConfig cfg;
  cfg.segments = 50;
  const auto inst = build_petrunin(cfg);
  const auto inv = petrunin_invariants(inst, 1e-12);
  bool structural = true;
  std::string failed;
  for (std::size_t i = 0; i < 5 && i < inv.size(); ++i)
    if (!inv[i].holds) {
      structural = false;
      failed += (failed.empty() ? "" : ",") + inv[i].id + fmt("=%.3g", inv[i].residual);
    }
  const auto osc = oscillation_report(inst);
  const auto flow = flow_agreement_check(inst, 1e-3);
  const double res = flow.escape.direction_residuals.empty() ? 0.0 : flow.escape.direction_residuals.back();
  const bool ok = structural && osc.alternating && flow.within && res >= 1e-2;
  return {ok, fmt("invariants %s, oscillation %s, deviation %.3g (bound %.3g), last direction residual %.3g",
                  structural ? "ok" : ("failed " + failed).c_str(), osc.alternating ? "ok" : "failed",
                  flow.max_deviation, flow.bound, res)};
}

// 10. Hilbert box family.
Verdict hilbert_criterion() {
  const auto rep = hilbert_box_report(hilbert_box_family(100, 50));
  return {rep.max_error <= 1e-12, fmt("max |d(o, X_n) - sqrt(n)| %.3g over n <= 50", rep.max_error)};
}

// 11. Comparison inequality across model spaces and a spherical violation.
Verdict comparison_criterion() {
  const double inf = kInf;
  const std::vector<SpacePtr> spaces{
      make_euclidean(3), make_tree(MetricTree::star({inf, inf, inf, 2.0})), make_hyperbolic(3), make_hilbert_box(6),
      make_product({make_euclidean(2), make_tree(MetricTree::star({inf, inf, 1.0}))})};
  std::mt19937_64 rng(1100);
  std::uniform_real_distribution<double> ut(0.0, 1.0);
  double worst = kInf;
  int triples = 0;
  for (const auto& s : spaces)
    for (int i = 0; i < 2000; ++i) {
      const auto x = s->sample(rng, 2.0), y = s->sample(rng, 2.0), z = s->sample(rng, 2.0);
      if (s->distance(x, y) == 0.0) continue;
      worst = std::min(worst, comparison_check(*s, x, y, z, ut(rng)));
      ++triples;
    }
  Vector a(3), b(3), c(3);
  a << 1, 0, 0;
  b << 0, 1, 0;
  c << 0, 0, 1;
  const double sphere = comparison_check(*make_sphere(2), a, b, c, 0.5);
  return {worst >= -1e-9 && sphere < 0.0,
          fmt("%d triples, min defect %.3g, sphere defect %.4f", triples, worst, sphere)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"jung bound", jung_bound_criterion},
      {"circumcenter oracle", circumcenter_criterion},
      {"helly reduction", helly_criterion},
      {"semicontraction", semicontraction_criterion},
      {"energy identity", energy_criterion},
      {"gradient floor", gradient_floor_criterion},
      {"intersection at infinity", infinity_criterion},
      {"curvature constants", constants_criterion},
      {"oscillating concave field", petrunin_criterion},
      {"hilbert box", hilbert_criterion},
      {"comparison suite", comparison_criterion},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("error: ") + e.what()};
    }
    failed += v.passed ? 0 : 1;
    std::printf("criterion %zu %s: %s (%s)\n", i + 1, criteria[i].first, v.passed ? "PASS" : "FAIL", v.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
