#include "hadamard/io.hpp"

#include "hadamard/error.hpp"
#include "hadamard/jung.hpp"
#include "hadamard/product.hpp"
#include "hadamard/tree.hpp"

#include "overloaded.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <locale>
#include <sstream>

namespace hadamard {

using json = nlohmann::json;
using detail::Overloaded;

namespace {

#define HADAMARD_TOLERANCE_FIELDS(X) \
  X(membership)                      \
  X(metric)                          \
  X(geodesic)                        \
  X(projection)                      \
  X(dykstra_stop)                    \
  X(dykstra_max_iterations)          \
  X(recession)                       \
  X(convexity)                       \
  X(circum_support)                  \
  X(jung_slack)                      \
  X(helly)                           \
  X(angular)                         \
  X(start_independence)              \
  X(semicontraction)                 \
  X(gradient_floor)                  \
  X(limit_field)                     \
  X(emptiness_threshold)             \
  X(petrunin)

}  // namespace

ToleranceProfile tolerance_profile_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("tolerance profile: ") + e.what());
  }
  if (!j.is_object()) throw UsageError("tolerance profile must be a JSON object");
  ToleranceProfile p;
  for (const auto& [key, value] : j.items()) {
    bool known = false;
#define X(name)                                \
  if (key == #name) {                          \
    p.name = value.get<decltype(p.name)>();    \
    known = true;                              \
  }
    HADAMARD_TOLERANCE_FIELDS(X)
#undef X
    if (!known) throw UsageError("unknown tolerance key: " + key);
  }
  return p;
}

std::string tolerance_profile_to_json(const ToleranceProfile& p) {
  json j;
#define X(name) j[#name] = p.name;
  HADAMARD_TOLERANCE_FIELDS(X)
#undef X
  return j.dump(2);
}

namespace {

double number(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  throw UsageError("expected a number, got " + j.dump());
}

Vector vector_from_json(const Json& j) {
  if (!j.is_array()) throw UsageError("expected a coordinate array, got " + j.dump());
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = number(j[i]);
  return v;
}

Json vector_to_json(const Vector& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(x);
  return a;
}

const Json& field_of(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw UsageError(std::string("missing key \"") + key + "\" in " + j.dump());
  return j.at(key);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

double parse_double(const std::string& s) {
  if (s == "inf") return std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw UsageError("not a number: \"" + s + "\"");
  }
  if (used != s.size()) throw UsageError("not a number: \"" + s + "\"");
  return v;
}

std::size_t parse_count(const std::string& s) {
  const double v = parse_double(s);
  if (!(v >= 0.0) || v != std::floor(v) || v > 1e9) throw UsageError("not a count: \"" + s + "\"");
  return static_cast<std::size_t>(v);
}

SpacePtr make_space(const std::string& kind, std::size_t d) {
  if (kind == "euclidean") return make_euclidean(d);
  if (kind == "sphere") return make_sphere(d);
  if (kind == "hyperbolic") return make_hyperbolic(d);
  if (kind == "box") return make_hilbert_box(d);
  throw UsageError("unknown space kind \"" + kind + "\"");
}

}  // namespace

SpacePtr space_from_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw UsageError("space spec needs kind:parameters, got \"" + spec + "\"");
  const std::string kind = spec.substr(0, colon);
  const std::string rest = spec.substr(colon + 1);
  if (kind == "product") {
    std::vector<SpacePtr> factors;
    for (const auto& part : split(rest, '*')) factors.push_back(space_from_spec(part));
    return make_product(std::move(factors));
  }
  if (kind == "tree") {
    if (rest.rfind("star:", 0) != 0) throw UsageError("tree spec must be tree:star:L1,L2,...");
    std::vector<double> legs;
    for (const auto& s : split(rest.substr(5), ',')) legs.push_back(parse_double(s));
    return make_tree(MetricTree::star(legs));
  }
  return make_space(kind, parse_count(rest));
}

SpacePtr space_from_json(const Json& j) {
  if (j.is_string()) return space_from_spec(j.get<std::string>());
  const auto kind = field_of(j, "kind").get<std::string>();
  if (kind == "product") {
    std::vector<SpacePtr> factors;
    for (const auto& f : field_of(j, "factors")) factors.push_back(space_from_json(f));
    return make_product(std::move(factors));
  }
  if (kind == "tree") {
    if (j.contains("star")) {
      std::vector<double> legs;
      for (const auto& l : j.at("star")) legs.push_back(number(l));
      return make_tree(MetricTree::star(legs));
    }
    MetricTree t;
    t.vertex_count = field_of(j, "vertices").get<std::size_t>();
    for (const auto& e : field_of(j, "edges")) {
      TreeEdge edge;
      edge.from = field_of(e, "from").get<std::size_t>();
      if (e.contains("to") && !e.at("to").is_null()) edge.to = e.at("to").get<std::size_t>();
      edge.length = e.contains("length") ? number(e.at("length")) : std::numeric_limits<double>::infinity();
      t.edges.push_back(edge);
    }
    return make_tree(std::move(t));
  }
  return make_space(kind, field_of(j, "dimension").get<std::size_t>());
}

Point point_from_json(const Space& space, const Json& j) {
  Point p;
  if (space.kind() == SpaceKind::MetricTree) {
    p = Point(TreeLocation{field_of(j, "edge").get<std::size_t>(), number(field_of(j, "offset"))});
  } else if (space.kind() == SpaceKind::Product) {
    const auto& prod = dynamic_cast<const ProductSpace&>(space);
    const auto& parts = field_of(j, "parts");
    if (parts.size() != prod.factors().size()) throw UsageError("product point has the wrong number of parts");
    std::vector<Point> out;
    for (std::size_t i = 0; i < parts.size(); ++i) out.push_back(point_from_json(*prod.factors()[i], parts[i]));
    p = Point(std::move(out));
  } else {
    p = Point(vector_from_json(j));
  }
  space.validate(p);
  return p;
}

Json point_to_json(const Point& p) {
  if (p.has_coords()) return vector_to_json(p.coords());
  if (p.has_tree_location()) return Json{{"edge", p.tree_location().edge}, {"offset", p.tree_location().offset}};
  Json parts = Json::array();
  for (const auto& q : p.parts()) parts.push_back(point_to_json(q));
  return Json{{"parts", parts}};
}

BoundaryDirection direction_from_json(const Space& space, const Json& j) {
  BoundaryDirection u;
  if (space.kind() == SpaceKind::MetricTree) {
    u = TreeRay{field_of(j, "ray").get<std::size_t>()};
  } else if (space.kind() == SpaceKind::Product) {
    const auto& prod = dynamic_cast<const ProductSpace&>(space);
    ProductDirection d;
    for (const auto& w : field_of(j, "weights")) d.weights.push_back(number(w));
    const auto& parts = field_of(j, "parts");
    if (parts.size() != prod.factors().size()) throw UsageError("product direction has the wrong number of parts");
    for (std::size_t i = 0; i < parts.size(); ++i) d.parts.push_back(direction_from_json(*prod.factors()[i], parts[i]));
    u = std::move(d);
  } else {
    u = vector_from_json(j);
  }
  space.validate(u);
  return u;
}

Json direction_to_json(const BoundaryDirection& u) {
  return std::visit(Overloaded{
                        [](const Vector& v) { return vector_to_json(v); },
                        [](const TreeRay& r) { return Json{{"ray", r.edge}}; },
                        [](const ProductDirection& d) {
                          Json parts = Json::array();
                          for (const auto& p : d.parts) parts.push_back(direction_to_json(p));
                          return Json{{"weights", d.weights}, {"parts", parts}};
                        },
                    },
                    u.data);
}

ConvexBody body_from_json(const SpacePtr& space, const Json& j) {
  const auto type = field_of(j, "type").get<std::string>();
  auto half = [](const Json& f) { return HalfSpace{vector_from_json(field_of(f, "normal")), number(field_of(f, "offset"))}; };
  if (type == "half_space") {
    const auto h = half(j);
    return make_half_space(space, h.normal, h.offset);
  }
  if (type == "ball") return make_ball(space, point_from_json(*space, field_of(j, "center")), number(field_of(j, "radius")));
  if (type == "cap")
    return make_spherical_cap(space, point_from_json(*space, field_of(j, "center")), number(field_of(j, "radius")));
  if (type == "polyhedron") {
    std::vector<HalfSpace> faces;
    for (const auto& f : field_of(j, "faces")) faces.push_back(half(f));
    return make_polyhedron(space, std::move(faces));
  }
  if (type == "subtree") {
    std::vector<SubtreePiece> pieces;
    for (const auto& p : field_of(j, "pieces"))
      pieces.push_back({field_of(p, "edge").get<std::size_t>(), number(field_of(p, "lo")), number(field_of(p, "hi"))});
    return make_subtree(space, std::move(pieces));
  }
  if (type == "intersection") {
    std::vector<ConvexBody> members;
    for (const auto& m : field_of(j, "members")) members.push_back(body_from_json(space, m));
    return make_intersection(std::move(members));
  }
  throw UsageError("unknown body type \"" + type + "\"");
}

ScalarField field_from_json(const SpacePtr& space, const Json& j) {
  const auto type = field_of(j, "type").get<std::string>();
  auto base = [&] { return j.contains("basepoint") ? point_from_json(*space, j.at("basepoint")) : space->origin(); };
  if (type == "distance") return distance_field(body_from_json(space, field_of(j, "body")));
  if (type == "normalized_distance") return normalized_distance(space, point_from_json(*space, field_of(j, "anchor")), base());
  if (type == "busemann") return busemann_field(space, direction_from_json(*space, field_of(j, "direction")), base());
  if (type == "affine") {
    const double c = j.contains("constant") ? number(j.at("constant")) : 0.0;
    return affine_field(space, vector_from_json(field_of(j, "normal")), c);
  }
  if (type == "max") {
    std::vector<ScalarField> members;
    for (const auto& m : field_of(j, "members")) members.push_back(field_from_json(space, m));
    return max_of(std::move(members));
  }
  if (type == "inf_shift") {
    std::vector<std::pair<ScalarField, double>> members;
    for (const auto& m : field_of(j, "members"))
      members.emplace_back(field_from_json(space, field_of(m, "field")), number(field_of(m, "shift")));
    return inf_shift_of(std::move(members));
  }
  if (type == "convex_combination") {
    std::vector<std::pair<double, ScalarField>> terms;
    for (const auto& t : field_of(j, "terms"))
      terms.emplace_back(number(field_of(t, "weight")), field_from_json(space, field_of(t, "field")));
    return convex_combination(std::move(terms));
  }
  throw UsageError("unknown field type \"" + type + "\"");
}

NestedFamily family_from_json(const SpacePtr& space, const Json& j) {
  std::vector<ConvexBody> bodies;
  for (const auto& b : field_of(j, "bodies")) bodies.push_back(body_from_json(space, b));
  Point o = j.contains("basepoint") ? point_from_json(*space, j.at("basepoint")) : space->origin();
  return make_nested_family(std::move(bodies), std::move(o));
}

std::vector<Point> read_points_csv(const Space& space, std::istream& in) {
  std::vector<Point> out;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::vector<double> vals;
    for (auto cell : split(line, ',')) {
      cell.erase(0, cell.find_first_not_of(" \t"));
      cell.erase(cell.find_last_not_of(" \t") + 1);
      try {
        vals.push_back(parse_double(cell));
      } catch (const UsageError& e) {
        throw UsageError("points CSV row " + std::to_string(row) + ": " + e.what());
      }
    }
    Point p;
    if (space.kind() == SpaceKind::MetricTree) {
      if (vals.size() != 2 || vals[0] < 0.0 || vals[0] != std::floor(vals[0]))
        throw UsageError("points CSV row " + std::to_string(row) + ": tree rows are edge,offset");
      p = Point(TreeLocation{static_cast<std::size_t>(vals[0]), vals[1]});
    } else if (space.kind() == SpaceKind::Product) {
      throw UsageError("points CSV does not support product spaces; use a JSON config");
    } else {
      p = Point(Vector(Eigen::Map<const Vector>(vals.data(), static_cast<Eigen::Index>(vals.size()))));
    }
    try {
      space.validate(p);
    } catch (const UsageError& e) {
      throw UsageError("points CSV row " + std::to_string(row) + ": " + e.what());
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<Point> points_from_spec(const Space& space, const std::string& spec, std::uint64_t seed) {
  if (spec.rfind("simplex:", 0) == 0) {
    const std::size_t n = parse_count(spec.substr(8));
    if (!space.is_euclidean_type() || n != space.dimension())
      throw UsageError("simplex:n needs a Euclidean space of dimension n");
    std::vector<Point> out;
    for (auto& v : regular_simplex(static_cast<int>(n))) out.emplace_back(std::move(v));
    return out;
  }
  if (spec.rfind("random:", 0) == 0) {
    const auto parts = split(spec.substr(7), ':');
    if (parts.empty() || parts.size() > 2) throw UsageError("random spec is random:count[:scale]");
    const std::size_t count = parse_count(parts[0]);
    const double scale = parts.size() == 2 ? parse_double(parts[1]) : 1.0;
    if (!(scale > 0.0)) throw UsageError("random scale must be positive");
    std::mt19937_64 rng(seed);
    std::vector<Point> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(space.sample(rng, scale));
    return out;
  }
  std::ifstream in(spec);
  if (!in) throw UsageError("cannot open points file \"" + spec + "\"");
  return read_points_csv(space, in);
}

std::string format_number(double x) {
  std::ostringstream out;
  out.imbue(std::locale::classic());
  out << std::setprecision(17) << x;
  return out.str();
}

void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << format_number(r[i]);
    out << '\n';
  }
}

}  // namespace hadamard
