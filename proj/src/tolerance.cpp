#include "hadamard/tolerance.hpp"

#include "hadamard/error.hpp"
#include "hadamard/io.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace hadamard {

namespace {

ToleranceProfile& profile_slot() {
  static ToleranceProfile profile = [] {
    const char* env = std::getenv("HADAMARD_TOLERANCE_PROFILE");
    if (env == nullptr || *env == '\0') return ToleranceProfile{};
    std::string text = env;
    if (text.front() != '{') {
      std::ifstream in(text);
      if (!in) throw UsageError("cannot open tolerance profile " + text);
      std::stringstream ss;
      ss << in.rdbuf();
      text = ss.str();
    }
    return tolerance_profile_from_json(text);
  }();
  return profile;
}

}  // namespace

const ToleranceProfile& default_tolerances() { return profile_slot(); }

void set_default_tolerances(const ToleranceProfile& profile) { profile_slot() = profile; }

}  // namespace hadamard
