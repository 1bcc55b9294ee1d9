#include "hadamard/error.hpp"
#include "hadamard/io.hpp"
#include "hadamard/tree.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <sstream>

using namespace hadamard;

TEST(Io, SpaceSpecs) {
  EXPECT_EQ(space_from_spec("euclidean:3")->kind(), SpaceKind::Euclidean);
  EXPECT_EQ(space_from_spec("euclidean:3")->dimension(), 3u);
  EXPECT_EQ(space_from_spec("sphere:2")->kind(), SpaceKind::Sphere);
  EXPECT_EQ(space_from_spec("hyperbolic:2")->kind(), SpaceKind::Hyperbolic);
  EXPECT_EQ(space_from_spec("box:10")->kind(), SpaceKind::TruncatedHilbertBox);
  const auto t = space_from_spec("tree:star:inf,2,inf");
  EXPECT_EQ(dynamic_cast<const TreeSpace&>(*t).rays().size(), 2u);
  const auto p = space_from_spec("product:euclidean:2*tree:star:inf,1");
  EXPECT_EQ(p->kind(), SpaceKind::Product);
  EXPECT_EQ(p->dimension(), 3u);
  EXPECT_THROW(space_from_spec("nowhere:2"), UsageError);
  EXPECT_THROW(space_from_spec("euclidean:x"), UsageError);
}

TEST(Io, SpaceObjects) {
  const auto t = space_from_json(Json::parse(R"({"kind": "tree", "vertices": 3,
      "edges": [{"from": 0, "to": 1, "length": 1}, {"from": 1, "to": 2, "length": 2}]})"));
  const auto& tree = dynamic_cast<const TreeSpace&>(*t);
  EXPECT_NEAR(tree.vertex_distance(0, 2), 3.0, 1e-15);
  EXPECT_EQ(space_from_json(Json::parse(R"({"kind": "hyperbolic", "dimension": 4})"))->dimension(), 4u);
}

TEST(Io, PointRoundTrip) {
  const auto e = space_from_spec("euclidean:2");
  const Point x = point_from_json(*e, Json::parse("[1.5, -2]"));
  EXPECT_EQ(point_to_json(x), Json::parse("[1.5, -2.0]"));
  const auto t = space_from_spec("tree:star:inf,inf");
  const Point y = point_from_json(*t, Json::parse(R"({"edge": 1, "offset": 2.5})"));
  EXPECT_EQ(y.tree_location().edge, 1u);
  EXPECT_EQ(point_to_json(y), Json::parse(R"({"edge": 1, "offset": 2.5})"));
  EXPECT_THROW(point_from_json(*e, Json::parse("[1, 2, 3]")), UsageError);
}

TEST(Io, BodiesAndFields) {
  const auto s = space_from_spec("euclidean:2");
  const auto body = body_from_json(s, Json::parse(R"({"type": "polyhedron", "faces": [
      {"normal": [1, 0], "offset": 1}, {"normal": [0, 1], "offset": 1}]})"));
  Vector x(2);
  x << 4, 0;
  EXPECT_NEAR(distance_to(body, x), 3.0, 1e-9);
  const auto f = field_from_json(s, Json::parse(R"({"type": "max", "members": [
      {"type": "affine", "normal": [1, 0]}, {"type": "affine", "normal": [0, 1], "constant": 2}]})"));
  EXPECT_DOUBLE_EQ(f(x), 4.0);
  EXPECT_THROW(field_from_json(s, Json::parse(R"({"type": "mystery"})")), UsageError);
}

TEST(Io, FamilyFromJson) {
  const auto s = space_from_spec("euclidean:1");
  const auto fam = family_from_json(s, Json::parse(R"({"bodies": [
      {"type": "half_space", "normal": [-1], "offset": -1},
      {"type": "half_space", "normal": [-1], "offset": -10}]})"));
  EXPECT_EQ(fam.bodies.size(), 2u);
  EXPECT_DOUBLE_EQ(fam.basepoint.coords()(0), 0.0);
}

TEST(Io, ToleranceRoundTrip) {
  ToleranceProfile p;
  p.jung_slack = 3e-8;
  p.dykstra_max_iterations = 77;
  const auto q = tolerance_profile_from_json(tolerance_profile_to_json(p));
  EXPECT_DOUBLE_EQ(q.jung_slack, 3e-8);
  EXPECT_EQ(q.dykstra_max_iterations, 77);
  const auto partial = tolerance_profile_from_json(R"({"helly": 0.5})");
  EXPECT_DOUBLE_EQ(partial.helly, 0.5);
  EXPECT_DOUBLE_EQ(partial.metric, ToleranceProfile{}.metric);
  EXPECT_THROW(tolerance_profile_from_json("{not json"), UsageError);
}

TEST(Io, PointsCsvAndGenerators) {
  const auto s = space_from_spec("euclidean:2");
  std::istringstream in("1,2\n3.5,-4\n");
  const auto pts = read_points_csv(*s, in);
  ASSERT_EQ(pts.size(), 2u);
  EXPECT_DOUBLE_EQ(pts[1].coords()(1), -4.0);
  EXPECT_EQ(points_from_spec(*s, "simplex:2", 1).size(), 3u);
  const auto a = points_from_spec(*s, "random:5:2", 9), b = points_from_spec(*s, "random:5:2", 9);
  ASSERT_EQ(a.size(), 5u);
  EXPECT_EQ(a[4].coords(), b[4].coords());
}

TEST(Io, CsvWriterUsesFullPrecision) {
  std::ostringstream out;
  write_csv(out, {"a", "b"}, {{1.0 / 3.0, 2.0}});
  EXPECT_EQ(out.str(), "a,b\n0.33333333333333331,2\n");
  EXPECT_EQ(format_number(0.1), "0.10000000000000001");
}
