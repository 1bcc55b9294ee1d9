#include "hadamard/version.hpp"

namespace hadamard {

const char* version() { return HADAMARD_VERSION; }

}  // namespace hadamard
