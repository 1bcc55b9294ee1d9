#include "commands.hpp"

#include "hadamard/error.hpp"
#include "hadamard/version.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>

namespace {

using hadamard::Json;

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kFailed = 2;

Json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw hadamard::UsageError("cannot open config " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw hadamard::UsageError("config " + path + ": " + e.what());
  }
}

struct Overrides {
  std::optional<std::string> space, out, format, points, family;
  std::optional<std::uint64_t> seed;
  std::optional<int> dimension, kn;
  std::optional<double> delta, min_diameter, step, horizon, radius;
  std::optional<std::size_t> segments, trials;
};

void apply_overrides(const Overrides& o, Json& cfg) {
  if (o.space) cfg["space"] = *o.space;
  if (o.seed) cfg["seed"] = *o.seed;
  if (o.out) cfg["output"]["path"] = *o.out;
  if (o.format) cfg["output"]["format"] = *o.format;
  auto& in = cfg["inputs"];
  if (in.is_null()) in = Json::object();
  if (o.points) in["points"] = *o.points;
  if (o.family) in["family"] = *o.family;
  if (o.dimension) in["dimension"] = *o.dimension;
  if (o.kn) in["kn"] = *o.kn;
  if (o.delta) in["delta"] = *o.delta;
  if (o.min_diameter) in["min_diameter"] = *o.min_diameter;
  if (o.step) in["step"] = *o.step;
  if (o.horizon) in["horizon"] = *o.horizon;
  if (o.radius) in["radius"] = *o.radius;
  if (o.segments) in["segments"] = *o.segments;
  if (o.trials) in["trials"] = *o.trials;
}

void apply_tolerances(const Json& cfg) {
  if (!cfg.contains("tolerances")) return;
  Json merged = Json::parse(hadamard::tolerance_profile_to_json(hadamard::default_tolerances()));
  merged.merge_patch(cfg.at("tolerances"));
  hadamard::set_default_tolerances(hadamard::tolerance_profile_from_json(merged.dump()));
}

int run(const std::string& command, Json cfg) {
  apply_tolerances(cfg);
  cfg["command"] = command;
  const auto start = std::chrono::steady_clock::now();
  const auto outcome = hadamard::cli::run_command(command, cfg);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  bool passed = true;
  Json checks = Json::array();
  for (const auto& c : outcome.checks) {
    passed = passed && c.passed;
    checks.push_back({{"id", c.id}, {"passed", c.passed}, {"value", c.value}, {"threshold", c.threshold}});
  }
  Json report{{"command", command},        {"version", hadamard::version()},
              {"config", cfg},             {"wall_time_seconds", wall},
              {"status", passed ? "ok" : "failed"}, {"checks", checks},
              {"results", outcome.results}};

  const Json output = cfg.value("output", Json::object());
  const auto format = output.value("format", std::string("json"));
  if (format != "json" && format != "csv") throw hadamard::UsageError("format must be json or csv");
  const auto path = output.value("path", std::string());
  std::ofstream file;
  if (!path.empty()) {
    file.open(path);
    if (!file) throw hadamard::UsageError("cannot write " + path);
  }
  std::ostream& out = path.empty() ? std::cout : file;
  if (format == "csv") {
    hadamard::write_csv(out, outcome.header, outcome.table);
  } else {
    out << report.dump(2) << '\n';
  }
  for (const auto& c : outcome.checks)
    std::cerr << (c.passed ? "PASS " : "FAIL ") << c.id << " value=" << hadamard::format_number(c.value)
              << " threshold=" << hadamard::format_number(c.threshold) << '\n';
  return passed ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Experiments on Hadamard spaces"};
  app.set_version_flag("--version", hadamard::version());
  app.require_subcommand(0, 1);

  std::string config_path;
  Overrides o;
  app.add_option("--config", config_path, "JSON config with command, space, seed, tolerances, inputs, output");
  app.add_option("--space", o.space, "Space spec, e.g. euclidean:3 or tree:star:inf,inf,1");
  app.add_option("--seed", o.seed, "Random seed");
  app.add_option("--out", o.out, "Output file (default stdout)");
  app.add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  for (const auto& name : hadamard::cli::command_names()) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--points", o.points, "CSV path, simplex:n or random:count[:scale]");
    sub->add_option("--dimension", o.dimension, "Model dimension n");
    sub->add_option("--delta", o.delta, "Telescopic scan tolerance");
    sub->add_option("--min-diameter", o.min_diameter, "Telescopic scan lower diameter");
    sub->add_option("--step", o.step, "Flow step");
    sub->add_option("--horizon", o.horizon, "Flow horizon");
    sub->add_option("--kn", o.kn, "Print k_n for this n");
    sub->add_option("--family", o.family, "Nested family: random, half-space, wedge, cone, strip, rotating, tree-ray, hilbert-box");
    sub->add_option("--segments", o.segments, "Number of affine pieces");
    sub->add_option("--trials", o.trials, "Batch size");
    sub->add_option("--radius", o.radius, "Helly radius");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    Json cfg = config_path.empty() ? Json::object() : load_config(config_path);
    std::string command = cfg.value("command", std::string());
    for (const auto* sub : app.get_subcommands()) command = sub->get_name();
    if (command.empty()) {
      std::cerr << app.help();
      return kUsage;
    }
    apply_overrides(o, cfg);
    return run(command, cfg);
  } catch (const hadamard::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kFailed;
  } catch (const hadamard::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const Json::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    // Capability, regime, infeasibility and construction errors: the input
    // does not meet the command's preconditions.
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
}
