#pragma once

#include "hadamard/io.hpp"

#include <string>
#include <vector>

namespace hadamard::cli {

struct Check {
  std::string id;
  bool passed = false;
  double value = 0.0;
  double threshold = 0.0;
};

struct Outcome {
  Json results = Json::object();
  std::vector<Check> checks;
  std::vector<std::string> header;
  std::vector<std::vector<double>> table;
};

/// Commands accepted in configs and on the command line.
const std::vector<std::string>& command_names();

/// Runs one experiment. `config` holds "space", "seed" and "inputs".
Outcome run_command(const std::string& command, const Json& config);

}  // namespace hadamard::cli
