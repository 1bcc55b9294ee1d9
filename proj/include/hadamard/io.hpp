#pragma once

#include "hadamard/body.hpp"
#include "hadamard/field.hpp"
#include "hadamard/filtering.hpp"
#include "hadamard/space.hpp"
#include "hadamard/tolerance.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace hadamard {

using Json = nlohmann::json;

/// Parses a tolerance profile; missing keys keep their defaults.
ToleranceProfile tolerance_profile_from_json(const std::string& text);
std::string tolerance_profile_to_json(const ToleranceProfile& profile);

/// Compact space specs: euclidean:d, sphere:d, hyperbolic:d, box:d,
/// tree:star:L1,L2,... (inf for rays), product:SPEC*SPEC*...
SpacePtr space_from_spec(const std::string& spec);

/// A spec string or an object {"kind": ..., "dimension": d} /
/// {"kind": "tree", "star": [...]} / {"kind": "tree", "vertices": n,
/// "edges": [{"from", "to", "length"}]} / {"kind": "product", "factors": [...]}.
SpacePtr space_from_json(const Json& j);

/// Coordinate arrays, {"edge", "offset"} on trees, {"parts": [...]} on products.
Point point_from_json(const Space& space, const Json& j);
Json point_to_json(const Point& p);

/// Unit vectors, {"ray": edge} on trees, {"weights", "parts"} on products.
BoundaryDirection direction_from_json(const Space& space, const Json& j);
Json direction_to_json(const BoundaryDirection& u);

/// {"type": "half_space" | "ball" | "polyhedron" | "subtree" | "cap" |
/// "intersection", ...}.
ConvexBody body_from_json(const SpacePtr& space, const Json& j);

/// {"type": "distance" | "normalized_distance" | "busemann" | "affine" |
/// "max" | "inf_shift" | "convex_combination", ...}.
ScalarField field_from_json(const SpacePtr& space, const Json& j);

/// {"bodies": [...], "basepoint": ...}; the basepoint defaults to the origin.
NestedFamily family_from_json(const SpacePtr& space, const Json& j);

/// One point per row, comma-separated, no header; trees read edge,offset.
std::vector<Point> read_points_csv(const Space& space, std::istream& in);

/// A CSV file path or a generator: simplex:n (unit-edge regular simplex,
/// Euclidean-type spaces) or random:count[:scale] (seeded samples).
std::vector<Point> points_from_spec(const Space& space, const std::string& spec, std::uint64_t seed);

/// 17 significant digits.
std::string format_number(double x);

void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

}  // namespace hadamard
