#include "commands.hpp"

#include "hadamard/circumcenter.hpp"
#include "hadamard/counterexamples.hpp"
#include "hadamard/error.hpp"
#include "hadamard/filtering.hpp"
#include "hadamard/flow.hpp"
#include "hadamard/generators.hpp"
#include "hadamard/jung.hpp"
#include "hadamard/tree.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <random>

namespace hadamard::cli {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Context {
  SpacePtr space;
  std::uint64_t seed = 1;
  Json inputs = Json::object();

  template <class T>
  T get(const char* key, T fallback) const {
    if (!inputs.contains(key) || inputs.at(key).is_null()) return fallback;
    try {
      return inputs.at(key).get<T>();
    } catch (const Json::exception& e) {
      throw UsageError(std::string("input \"") + key + "\": " + e.what());
    }
  }
  bool has(const char* key) const { return inputs.contains(key) && !inputs.at(key).is_null(); }
};

std::vector<Point> input_points(const Context& ctx, const Space& space) {
  if (!ctx.has("points")) throw UsageError("this command needs --points or inputs.points");
  const auto& p = ctx.inputs.at("points");
  if (p.is_string()) return points_from_spec(space, p.get<std::string>(), ctx.seed);
  std::vector<Point> out;
  for (const auto& q : p) out.push_back(point_from_json(space, q));
  return out;
}

int model_dimension(const Context& ctx, const Space& space) {
  const int n = ctx.get<int>("dimension", static_cast<int>(space.dimension()));
  if (n < 1) throw UsageError("dimension must be positive");
  return n;
}

// Spaces for a batch: inputs.dimensions re-instantiates the configured kind.
std::vector<SpacePtr> batch_spaces(const Context& ctx) {
  if (!ctx.has("dimensions")) return {ctx.space};
  const auto desc = ctx.space->describe();
  const auto kind = desc.substr(0, desc.find(':'));
  std::vector<SpacePtr> out;
  for (const auto n : ctx.get<std::vector<std::size_t>>("dimensions", {}))
    out.push_back(space_from_spec(kind + ":" + std::to_string(n)));
  return out;
}

Json jung_json(const JungReport& r) {
  Json j{{"n", r.n},         {"diameter", r.diameter}, {"radius", r.radius},      {"ratio", r.ratio},
         {"bound", r.bound}, {"slack", r.slack},       {"support_size", r.support_size}, {"holds", r.holds}};
  if (r.scale_bucket) j["scale_bucket"] = *r.scale_bucket;
  return j;
}

Json escape_json(const EscapeReport& e) {
  Json j{{"velocity", e.velocity},
         {"doubling_times", e.doubling_times},
         {"rates", e.rates},
         {"direction_residuals", e.direction_residuals},
         {"converged", e.converged},
         {"bounded", e.bounded},
         {"min_grad_norm", e.min_grad_norm},
         {"lipschitz", e.lipschitz},
         {"velocity_lower_bound", e.velocity_lower_bound}};
  j["direction"] = e.direction ? direction_to_json(*e.direction) : Json();
  return j;
}

Outcome jung(const Context& ctx) {
  Outcome out;
  const double tol = default_tolerances().jung_slack;
  if (ctx.has("trials")) {
    const auto trials = ctx.get<std::size_t>("trials", 0);
    const auto set_size = ctx.get<std::size_t>("set_size", 12);
    const double scale = ctx.get<double>("scale", 1.0);
    out.header = {"n", "trial", "diameter", "radius", "ratio", "bound", "slack"};
    double worst = kInf;
    Json per_space = Json::array();
    for (const auto& space : batch_spaces(ctx)) {
      std::mt19937_64 rng(ctx.seed + space->dimension());
      const int n = ctx.has("dimensions") ? static_cast<int>(space->dimension()) : model_dimension(ctx, *space);
      double local = kInf;
      for (std::size_t t = 0; t < trials; ++t) {
        const auto r = jung_check(*space, random_point_set(*space, rng, set_size, scale), n);
        local = std::min(local, r.slack);
        out.table.push_back({double(n), double(t), r.diameter, r.radius, r.ratio, r.bound, r.slack});
      }
      worst = std::min(worst, local);
      per_space.push_back({{"space", space->describe()}, {"n", n}, {"min_slack", local}});
    }
    out.results["batches"] = per_space;
    out.results["min_slack"] = worst;
    out.checks.push_back({"jung-inequality", worst >= -tol, worst, -tol});
    return out;
  }
  const auto pts = input_points(ctx, *ctx.space);
  const int n = model_dimension(ctx, *ctx.space);
  if (ctx.has("delta") || ctx.has("min_diameter")) {
    const auto reps = telescopic_jung_scan(*ctx.space, pts, n, ctx.get<double>("delta", 0.01),
                                           ctx.get<double>("min_diameter", 1.0));
    out.header = {"scale_bucket", "diameter", "radius", "ratio", "bound", "slack"};
    Json arr = Json::array();
    bool all = true;
    double worst = kInf;
    for (const auto& r : reps) {
      arr.push_back(jung_json(r));
      all = all && r.holds;
      worst = std::min(worst, r.slack);
      out.table.push_back({r.scale_bucket.value_or(0.0), r.diameter, r.radius, r.ratio, r.bound, r.slack});
    }
    out.results["scan"] = arr;
    out.checks.push_back({"telescopic-jung", all, reps.empty() ? 0.0 : worst, -ctx.get<double>("delta", 0.01)});
    return out;
  }
  const auto r = jung_check(*ctx.space, pts, n);
  out.results = jung_json(r);
  out.header = {"diameter", "radius", "ratio", "bound", "slack"};
  out.table.push_back({r.diameter, r.radius, r.ratio, r.bound, r.slack});
  out.checks.push_back({"jung-inequality", r.holds, r.slack, -tol});
  const auto spec = ctx.get<std::string>("points", "");
  if (spec.rfind("simplex:", 0) == 0) out.checks.push_back({"jung-equality", std::abs(r.slack) <= tol, r.slack, tol});
  return out;
}

Outcome circumcenter_cmd(const Context& ctx) {
  Outcome out;
  if (ctx.has("trials")) {
    const auto trials = ctx.get<std::size_t>("trials", 0);
    const auto set_size = ctx.get<std::size_t>("set_size", 10);
    out.header = {"trial", "radius", "support_size", "residual"};
    Json per_space = Json::array();
    for (const auto& space : batch_spaces(ctx)) {
      std::mt19937_64 rng(ctx.seed + space->dimension());
      Json radii = Json::array();
      for (std::size_t t = 0; t < trials; ++t) {
        const auto r = circumcenter(*space, random_point_set(*space, rng, set_size));
        radii.push_back(r.radius);
        out.table.push_back({double(t), r.radius, double(r.support.size()), r.residual});
      }
      per_space.push_back({{"space", space->describe()}, {"radii", radii}});
    }
    out.results["batches"] = per_space;
    return out;
  }
  const auto pts = input_points(ctx, *ctx.space);
  const auto r = circumcenter(*ctx.space, pts);
  out.results = {{"center", point_to_json(r.center)}, {"radius", r.radius}, {"support", r.support},
                 {"iterations", r.iterations}, {"residual", r.residual}, {"exact", r.exact}};
  out.header = {"radius", "support_size", "residual"};
  out.table.push_back({r.radius, double(r.support.size()), r.residual});
  out.checks.push_back({"circumcenter-support", !r.support.empty(), double(r.support.size()), 1.0});
  return out;
}

Outcome helly(const Context& ctx) {
  Outcome out;
  const double tol = default_tolerances().helly;
  auto run = [&](const Space& space, const std::vector<Point>& pts, int n) {
    double r = ctx.get<double>("radius", -1.0);
    if (r < 0.0) {
      // The largest small-subset radius: the premise holds by construction.
      r = helly_subset_check(space, pts, n, kInf).max_subset_radius;
    }
    return std::pair{helly_subset_check(space, pts, n, r), r};
  };
  out.header = {"trial", "max_subset_radius", "whole_radius", "radius", "consistent"};
  bool all = true;
  double worst = -kInf;
  if (ctx.has("trials")) {
    const auto trials = ctx.get<std::size_t>("trials", 0);
    const auto set_size = ctx.get<std::size_t>("set_size", 8);
    for (const auto& space : batch_spaces(ctx)) {
      std::mt19937_64 rng(ctx.seed + space->dimension());
      const int n = ctx.has("dimensions") ? static_cast<int>(space->dimension()) : model_dimension(ctx, *space);
      for (std::size_t t = 0; t < trials; ++t) {
        const auto [rep, r] = run(*space, random_point_set(*space, rng, set_size), n);
        all = all && rep.consistent;
        worst = std::max(worst, rep.whole_radius - r);
        out.table.push_back({double(t), rep.max_subset_radius, rep.whole_radius, r, rep.consistent ? 1.0 : 0.0});
      }
    }
  } else {
    const auto pts = input_points(ctx, *ctx.space);
    const auto [rep, r] = run(*ctx.space, pts, model_dimension(ctx, *ctx.space));
    all = rep.consistent;
    worst = rep.whole_radius - r;
    out.results = {{"max_subset_radius", rep.max_subset_radius}, {"whole_radius", rep.whole_radius},
                   {"radius", r}, {"premise", rep.premise}, {"conclusion", rep.conclusion},
                   {"subsets_checked", rep.subsets_checked}};
    out.table.push_back({0.0, rep.max_subset_radius, rep.whole_radius, r, rep.consistent ? 1.0 : 0.0});
  }
  out.results["max_excess"] = worst;
  out.checks.push_back({"helly-reduction", all, worst, tol});
  return out;
}

Outcome dimension_cmd(const Context& ctx) {
  Outcome out;
  const auto est = dimension_lower_bound(*ctx.space, input_points(ctx, *ctx.space));
  out.results = {{"ratio", est.ratio}, {"exceeds_all_bounds", est.exceeds_all_bounds}};
  out.results["n"] = est.n ? Json(*est.n) : Json();
  out.header = {"ratio", "n"};
  out.table.push_back({est.ratio, est.n ? double(*est.n) : kInf});
  return out;
}

GradientMode parse_mode(const std::string& m) {
  if (m == "displacement") return GradientMode::Displacement;
  if (m == "probe") return GradientMode::Probe;
  if (m == "none") return GradientMode::None;
  throw UsageError("gradient mode must be displacement, probe or none");
}

Outcome flow_cmd(const Context& ctx) {
  Outcome out;
  const auto experiment = ctx.get<std::string>("experiment", "trajectory");
  const double step = ctx.get<double>("step", 1e-3);
  if (!(step > 0.0)) throw UsageError("step must be positive");
  std::mt19937_64 rng(ctx.seed);
  if (experiment == "semicontraction") {
    const double horizon = ctx.get<double>("horizon", 0.2);
    const auto fields = ctx.get<std::size_t>("trials", 100);
    const auto pairs = ctx.get<std::size_t>("pairs", 100);
    double worst = 0.0;
    out.header = {"field", "worst_ratio"};
    for (std::size_t i = 0; i < fields; ++i) {
      const auto f = random_max_affine(ctx.space, rng);
      double local = 0.0;
      for (std::size_t k = 0; k < pairs; ++k) {
        const Point x = ctx.space->sample(rng, 2.0);
        const Point y = ctx.space->sample(rng, 2.0);
        local = std::max(local, semicontraction_check(f, x, y, horizon, step));
      }
      worst = std::max(worst, local);
      out.table.push_back({double(i), local});
    }
    const double bound = 1.0 + default_tolerances().semicontraction;
    out.results["max_ratio"] = worst;
    out.checks.push_back({"semicontraction", worst <= bound, worst, bound});
    return out;
  }
  if (experiment == "energy") {
    const double horizon = ctx.get<double>("horizon", 1.0);
    const auto fields = ctx.get<std::size_t>("trials", 50);
    double worst = 1.0;
    out.header = {"field", "constant", "constant_half_step", "ratio"};
    for (std::size_t i = 0; i < fields; ++i) {
      const auto f = random_smooth_field(ctx.space, rng, 3, ctx.get<double>("anchor_radius", 3.0));
      const Point x = ctx.space->sample(rng, 1.0);
      const double c1 = run_flow(f, x, horizon, step).energy_constant;
      const double c2 = run_flow(f, x, horizon, step / 2).energy_constant;
      const double ratio = std::max(c1, c2) / std::max(std::min(c1, c2), 1e-300);
      worst = std::max(worst, ratio);
      out.table.push_back({double(i), c1, c2, ratio});
    }
    out.results["worst_ratio"] = worst;
    out.checks.push_back({"energy-identity", worst <= 2.0, worst, 2.0});
    return out;
  }
  if (experiment != "trajectory") throw UsageError("flow experiment must be trajectory, semicontraction or energy");
  if (!ctx.has("field")) throw UsageError("flow needs inputs.field (see --config)");
  const auto f = field_from_json(ctx.space, ctx.inputs.at("field"));
  const Point x = ctx.has("start") ? point_from_json(*ctx.space, ctx.inputs.at("start")) : ctx.space->origin();
  const double horizon = ctx.get<double>("horizon", 1000.0 * step);
  const auto traj = run_flow(f, x, horizon, step, parse_mode(ctx.get<std::string>("gradient", "displacement")));
  double rise = 0.0;
  for (std::size_t k = 1; k < traj.values.size(); ++k)
    rise = std::max(rise, (traj.values[k] - traj.values[k - 1]) / (1.0 + std::abs(traj.values[k - 1])));
  out.results = {{"steps", traj.points.size() - 1}, {"step_rule", traj.step_rule},
                 {"energy_constant", traj.energy_constant}, {"endpoint", point_to_json(traj.points.back())},
                 {"final_value", traj.values.back()}};
  if (traj.points.size() >= 9) out.results["escape"] = escape_json(velocity_of_escape(traj, lipschitz_bound(f)));
  out.checks.push_back({"energy-monotone", rise <= 1e-12, rise, 1e-12});
  out.header = {"t"};
  const Point& p0 = traj.points.front();
  const std::size_t width = p0.has_coords() ? static_cast<std::size_t>(p0.coords().size()) : 0;
  for (std::size_t i = 0; i < width; ++i) out.header.push_back("x" + std::to_string(i));
  out.header.insert(out.header.end(), {"f", "grad_norm"});
  for (std::size_t k = 0; k < traj.points.size(); ++k) {
    std::vector<double> row{traj.times[k]};
    for (std::size_t i = 0; i < width; ++i) row.push_back(traj.points[k].coords()(static_cast<Eigen::Index>(i)));
    row.push_back(traj.values[k]);
    row.push_back(traj.grad_norms[k]);
    out.table.push_back(std::move(row));
  }
  return out;
}

NestedFamily family_from_spec(const Context& ctx, const std::string& spec, std::mt19937_64& rng) {
  const auto count = ctx.get<std::size_t>("count", 16);
  const auto& space = ctx.space;
  const auto d = static_cast<Eigen::Index>(space->dimension());
  Vector u = Vector::Zero(d);
  if (d > 0) u(0) = 1.0;
  if (ctx.has("direction")) u = direction_from_json(*space, ctx.inputs.at("direction")).vector();
  if (spec == "half-space") return half_space_family(space, u, count);
  if (spec == "wedge") return wedge_family(space, Eigen::MatrixXd::Identity(d, d), count);
  if (spec == "cone") return shifted_cone_family(space, u, ctx.get<double>("angle", 0.5), count);
  if (spec == "strip") return strip_family(space, u, ctx.get<double>("width", 1.0), count);
  if (spec == "rotating") {
    std::vector<Vector> w;
    for (std::size_t j = 0; j < count; ++j) {
      Vector v = Vector::Zero(d);
      if (d > 1) v(1) = j % 2 == 0 ? 1.0 : -1.0;
      w.push_back(v);
    }
    return rotating_family(space, u, std::move(w), 0.5, 0.125);
  }
  if (spec == "random") return random_nested_family(space, rng, count);
  if (spec.rfind("tree-ray", 0) == 0) {
    const auto& t = dynamic_cast<const TreeSpace&>(*space);
    if (t.rays().empty()) throw UsageError("tree-ray family needs a tree with a ray");
    return tree_ray_family(space, spec.size() > 9 ? std::stoul(spec.substr(9)) : t.rays().front(), count);
  }
  throw UsageError("unknown family \"" + spec + "\"");
}

Outcome filtering(const Context& ctx) {
  Outcome out;
  const auto& tol = default_tolerances();
  const auto spec = ctx.has("family") && ctx.inputs.at("family").is_string()
                        ? ctx.inputs.at("family").get<std::string>()
                        : std::string();
  if (spec == "hilbert-box") {
    if (ctx.space->kind() != SpaceKind::TruncatedHilbertBox) throw UsageError("hilbert-box family needs space box:d");
    const auto m = ctx.get<std::size_t>("count", std::min<std::size_t>(50, ctx.space->dimension()));
    const auto rep = hilbert_box_report(hilbert_box_family(ctx.space->dimension(), m));
    out.results = {{"distances", rep.distances}, {"max_error", rep.max_error}, {"slope", rep.slope}};
    out.header = {"n", "distance"};
    for (std::size_t i = 0; i < rep.distances.size(); ++i) out.table.push_back({double(i + 1), rep.distances[i]});
    out.checks.push_back({"hilbert-distance", rep.max_error <= 1e-12, rep.max_error, 1e-12});
    out.checks.push_back({"hilbert-slope", std::abs(rep.slope - 1.0) <= 1e-9, rep.slope, 1.0});
    return out;
  }
  std::mt19937_64 rng(ctx.seed);
  const auto trials = ctx.get<std::size_t>("trials", 1);
  const int n = model_dimension(ctx, *ctx.space);
  const bool euclid = ctx.space->kind() == SpaceKind::Euclidean;
  ProbeProfile profile;
  profile.levels = ctx.get<int>("probe_levels", 6);
  profile.directions = ctx.get<std::size_t>("probe_directions", 32);
  profile.refine_passes = 1;
  std::map<std::string, std::pair<bool, double>> agg{
      {"nested", {true, 0.0}},          {"limit-stable", {true, 0.0}},        {"gradient-floor", {true, kInf}},
      {"boundary-certificate", {true, 0.0}}, {"start-independence", {true, 0.0}}, {"projection-spread", {true, -kInf}}};
  if (euclid) agg["monotone-radius"] = {true, 0.0};
  out.header = {"family", "truncation", "stability", "min_gradient", "floor", "max_gap", "start_gap", "max_angle"};
  Json fams = Json::array();
  for (std::size_t t = 0; t < trials; ++t) {
    const auto family = ctx.has("family") && ctx.inputs.at("family").is_object()
                            ? family_from_json(ctx.space, ctx.inputs.at("family"))
                            : family_from_spec(ctx, spec.empty() ? "random" : spec, rng);
    const auto nested = verify_nested(family, ctx.seed + t);
    const auto limit = build_limit_field(family);
    const auto floor = gradient_floor_check(limit, n, {}, profile);
    const auto cert = intersection_at_infinity(limit);
    std::vector<Point> samples{family.basepoint};
    for (std::size_t i = 0; i < 4 && i < limit.probes.size(); ++i) samples.push_back(limit.probes[i]);
    const auto spread = projection_spread_check(family, samples, ctx.get<double>("spread_t", 1.0));
    double max_angle = 0.0;
    if (euclid && cert.direction) {
      const auto mr = monotone_radius_check(family, *cert.direction);
      max_angle = mr.max_angle;
      agg["monotone-radius"].first &= mr.passes;
      agg["monotone-radius"].second = std::max(agg["monotone-radius"].second, mr.max_angle);
    }
    auto update = [&](const char* id, bool ok, double v, bool take_min = false) {
      auto& a = agg[id];
      a.first = a.first && ok;
      a.second = take_min ? std::min(a.second, v) : std::max(a.second, v);
    };
    update("nested", nested.nested, nested.max_violation);
    update("limit-stable", limit.stable, limit.stability);
    update("gradient-floor", floor.passes, floor.min_observed, true);
    update("boundary-certificate", cert.direction && cert.in_every_body, cert.direction ? cert.max_gap : kInf);
    update("start-independence", cert.start_independent, cert.start_gap);
    update("projection-spread", spread.holds, spread.max_excess);
    Json fj{{"truncation", limit.truncation},
            {"stability", limit.stability},
            {"base_distance_last", limit.base_distances.back()},
            {"gradient_floor", floor.floor},
            {"min_gradient", floor.min_observed},
            {"max_gap", cert.max_gap},
            {"start_gap", cert.start_gap},
            {"escape", escape_json(cert.escape)}};
    Json verdicts = Json::array();
    for (const auto& v : cert.verdicts) verdicts.push_back({{"index", v.index}, {"contains", v.contains}, {"gap", v.gap}});
    fj["verdicts"] = verdicts;
    fj["direction"] = cert.direction ? direction_to_json(*cert.direction) : Json();
    if (euclid) fj["max_monotone_angle"] = max_angle;
    fams.push_back(fj);
    out.table.push_back({double(t), double(limit.truncation), limit.stability, floor.min_observed, floor.floor,
                         cert.max_gap, cert.start_gap, max_angle});
  }
  out.results["families"] = fams;
  const std::map<std::string, double> thresholds{{"nested", 1e-8},
                                                 {"limit-stable", tol.limit_field},
                                                 {"gradient-floor", gradient_floor(n) - tol.gradient_floor},
                                                 {"boundary-certificate", tol.angular},
                                                 {"start-independence", tol.start_independence},
                                                 {"projection-spread", 1e-9},
                                                 {"monotone-radius", std::numbers::pi / 2 + tol.angular}};
  for (const auto& [id, a] : agg) out.checks.push_back({id, a.first, a.second, thresholds.at(id)});
  return out;
}

Outcome petrunin(const Context& ctx) {
  Outcome out;
  PetruninConfig cfg;
  cfg.alpha = ctx.get<double>("alpha", cfg.alpha);
  if (ctx.has("beta")) cfg.beta = ctx.get<double>("beta", 0.0);
  cfg.q = ctx.get<double>("q", cfg.q);
  cfg.rho = ctx.get<double>("rho", cfg.rho);
  cfg.segments = ctx.get<std::size_t>("segments", 50);
  const auto inst = build_petrunin(cfg);
  const double tol = default_tolerances().petrunin;
  Json inv = Json::array();
  for (const auto& c : petrunin_invariants(inst, tol)) {
    inv.push_back({{"id", c.id}, {"residual", c.residual}, {"holds", c.holds}});
    out.checks.push_back({"petrunin-" + c.id, c.holds, c.residual, tol});
  }
  const auto osc = oscillation_report(inst);
  out.checks.push_back({"oscillation", osc.alternating && osc.norms_increasing,
                        osc.entries.back().angle, cfg.alpha});
  const auto flow = flow_agreement_check(inst, ctx.get<double>("step", 1e-3));
  out.checks.push_back({"flow-tracking", flow.within, flow.max_deviation, flow.bound});
  const double last_res = flow.escape.direction_residuals.empty() ? 0.0 : flow.escape.direction_residuals.back();
  out.checks.push_back({"escape-nonconvergence", last_res >= 1e-2, last_res, 1e-2});
  Json xs = Json::array(), ps = Json::array();
  for (const auto& x : inst.x) xs.push_back(point_to_json(Point(x)));
  for (const auto& p : inst.p) ps.push_back(point_to_json(Point(p)));
  out.results = {{"invariants", inv}, {"x", xs}, {"p", ps}, {"c", inst.c},
                 {"flow", {{"max_deviation", flow.max_deviation}, {"bound", flow.bound},
                           {"segments_covered", flow.segments_covered},
                           {"first_segment_angle", flow.first_segment_angle},
                           {"escape", escape_json(flow.escape)}}}};
  if (flow.first_divergence_segment) out.results["flow"]["first_divergence_segment"] = *flow.first_divergence_segment;
  out.header = {"n", "angle", "norm"};
  for (const auto& e : osc.entries) out.table.push_back({double(e.n), e.angle, e.norm});
  return out;
}

Outcome c0_demo(const Context& ctx) {
  Outcome out;
  const auto rep = c0_convergence_demos(ctx.get<std::size_t>("d", 64), ctx.get<std::size_t>("rays", 6));
  Json h = Json::array();
  out.header = {"n", "sup_value"};
  bool decreasing = true;
  for (std::size_t i = 0; i < rep.hilbert.size(); ++i) {
    h.push_back({{"n", rep.hilbert[i].n}, {"sup_value", rep.hilbert[i].sup_value}});
    out.table.push_back({rep.hilbert[i].n, rep.hilbert[i].sup_value});
    if (i > 1 && !(rep.hilbert[i].sup_value < rep.hilbert[i - 1].sup_value)) decreasing = false;
  }
  out.results = {{"hilbert", h}, {"hilbert_rate", rep.hilbert_rate},
                 {"tree_off_ray_error", rep.tree_off_ray_error}, {"tree_on_ray_error", rep.tree_on_ray_error}};
  out.checks.push_back({"c0-hilbert-decay", decreasing, rep.hilbert.back().sup_value, 0.0});
  const double terr = std::max(rep.tree_off_ray_error, rep.tree_on_ray_error);
  out.checks.push_back({"c0-tree-busemann", terr <= 1e-12, terr, 1e-12});
  return out;
}

// acos and the rounded product 2 pi / 3 may differ in the last bits.
bool k1_matches(double k) {
  const double exact = 2.0 * std::numbers::pi / 3.0;
  return std::abs(k - exact) <= 4.0 * std::numeric_limits<double>::epsilon() * exact;
}

Outcome constants(const Context& ctx) {
  Outcome out;
  if (ctx.has("kn")) {
    const int n = ctx.get<int>("kn", 1);
    const double k = k_n(n);
    out.results["k_n"] = k;
    out.header = {"n", "k_n"};
    out.table.push_back({double(n), k});
    if (n == 1) out.checks.push_back({"k1-exact", k1_matches(k), k, 2.0 * std::numbers::pi / 3.0});
    return out;
  }
  const double param = ctx.get<double>("parameter", 1e-3);
  const int max_n = ctx.get<int>("max_n", 4);
  out.header = {"n", "k_n", "jung_bound", "gradient_floor", "s_n_ratio", "r_n_ratio"};
  Json rows = Json::array();
  double worst = 0.0;
  for (int n = 1; n <= max_n; ++n) {
    const double sr = s_n(n, param) / param;
    const double rr = r_n(n, param) / param;
    const double b = jung_bound(n);
    worst = std::max({worst, std::abs(sr - 1.0 / b), std::abs(rr - b)});
    rows.push_back({{"n", n}, {"k_n", k_n(n)}, {"jung_bound", b}, {"gradient_floor", gradient_floor(n)},
                    {"s_n_ratio", sr}, {"r_n_ratio", rr}});
    out.table.push_back({double(n), k_n(n), b, gradient_floor(n), sr, rr});
  }
  out.results["table"] = rows;
  out.checks.push_back({"jung-limits", worst <= 1e-4, worst, 1e-4});
  out.checks.push_back({"k1-exact", k1_matches(k_n(1)), k_n(1), 2.0 * std::numbers::pi / 3.0});

  const auto triples = ctx.get<std::size_t>("comparison_triples", 0);
  if (triples > 0) {
    std::mt19937_64 rng(ctx.seed);
    const std::vector<std::string> specs{"euclidean:3", "tree:star:inf,inf,inf,2", "hyperbolic:3", "box:6",
                                         "product:euclidean:2*tree:star:inf,inf,1"};
    std::uniform_real_distribution<double> ut(0.0, 1.0);
    double worst_cmp = kInf;
    Json per = Json::array();
    for (const auto& s : specs) {
      const auto space = space_from_spec(s);
      double local = kInf;
      for (std::size_t i = 0; i < triples / specs.size(); ++i) {
        const auto x = space->sample(rng, 2.0), y = space->sample(rng, 2.0), z = space->sample(rng, 2.0);
        if (space->distance(x, y) == 0.0) continue;
        local = std::min(local, comparison_check(*space, x, y, z, ut(rng)));
      }
      worst_cmp = std::min(worst_cmp, local);
      per.push_back({{"space", s}, {"min_defect", local}});
    }
    out.results["comparison"] = per;
    out.checks.push_back({"cat0-comparison", worst_cmp >= -default_tolerances().metric, worst_cmp,
                          -default_tolerances().metric});
    // Positive curvature: an equilateral spherical triangle breaks the inequality.
    const auto sphere = make_sphere(2);
    Vector a(3), b(3), c(3);
    a << 1, 0, 0;
    b << 0, 1, 0;
    c << 0, 0, 1;
    const double sv = comparison_check(*sphere, Point(a), Point(b), Point(c), 0.5);
    out.results["sphere_violation"] = sv;
    out.checks.push_back({"sphere-violation", sv < 0.0, sv, 0.0});
  }
  return out;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"jung",      "circumcenter", "helly",    "dimension", "flow",
                                              "filtering", "petrunin",     "c0-demo", "constants"};
  return names;
}

Outcome run_command(const std::string& command, const Json& config) {
  Context ctx;
  ctx.space = space_from_json(config.value("space", Json("euclidean:2")));
  ctx.seed = config.value("seed", std::uint64_t{1});
  if (config.contains("inputs")) ctx.inputs = config.at("inputs");
  if (!ctx.inputs.is_object()) throw UsageError("inputs must be a JSON object");
  static const std::map<std::string, std::function<Outcome(const Context&)>> table{
      {"jung", jung},         {"circumcenter", circumcenter_cmd}, {"helly", helly},
      {"dimension", dimension_cmd}, {"flow", flow_cmd},          {"filtering", filtering},
      {"petrunin", petrunin}, {"c0-demo", c0_demo},            {"constants", constants}};
  const auto it = table.find(command);
  if (it == table.end()) throw UsageError("unknown command \"" + command + "\"");
  return it->second(ctx);
}

}  // namespace hadamard::cli
