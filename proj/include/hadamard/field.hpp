#pragma once

#include "hadamard/body.hpp"
#include "hadamard/space.hpp"

#include <utility>
#include <variant>
#include <vector>

namespace hadamard {

class ScalarField;

/// d(x, body).
struct DistanceTo {
  ConvexBody body;
};

/// d(x, anchor) - d(basepoint, anchor): 1-Lipschitz, zero at the basepoint.
struct NormalizedDistance {
  Point anchor;
  Point basepoint;
};

/// Busemann function of a boundary direction, zero at the basepoint.
struct Busemann {
  BoundaryDirection direction;
  Point basepoint;
};

/// <normal, x> + constant on a Euclidean-type space.
struct Affine {
  Vector normal;
  double constant = 0.0;
};

struct MaxOf {
  std::vector<ScalarField> members;
};

/// inf_i (f_i(x) + c_i). A single member is a plain shift.
struct InfShiftOf {
  std::vector<std::pair<ScalarField, double>> members;
};

/// sum_i w_i f_i with w_i >= 0 summing to 1.
struct ConvexCombination {
  std::vector<std::pair<double, ScalarField>> terms;
};

/// Real-valued function on a model space given by an exact closed form.
class ScalarField {
 public:
  using Form = std::variant<DistanceTo, NormalizedDistance, Busemann, Affine, MaxOf, InfShiftOf,
                            ConvexCombination>;

  ScalarField(SpacePtr space, Form form);

  const SpacePtr& space() const { return space_; }
  const Form& form() const { return form_; }

  double operator()(const Point& x) const;

 private:
  SpacePtr space_;
  Form form_;
};

ScalarField distance_field(ConvexBody body);
ScalarField normalized_distance(SpacePtr space, Point anchor, Point basepoint);
ScalarField busemann_field(SpacePtr space, BoundaryDirection direction, Point basepoint);
ScalarField affine_field(SpacePtr space, Vector normal, double constant);
ScalarField max_of(std::vector<ScalarField> members);
ScalarField inf_shift_of(std::vector<std::pair<ScalarField, double>> members);
ScalarField convex_combination(std::vector<std::pair<double, ScalarField>> terms);
/// f + c.
ScalarField shifted(ScalarField f, double c);
/// -f for affine fields and max/inf of affine fields.
ScalarField negate(const ScalarField& f);

double evaluate(const ScalarField& f, const Point& x);

bool is_convex(const ScalarField& f);
bool is_concave(const ScalarField& f);
bool is_affine(const ScalarField& f);
double lipschitz_bound(const ScalarField& f);

/// Index of the member attaining the max (MaxOf) or the inf (InfShiftOf);
/// lowest index on ties.
std::size_t active_member(const ScalarField& f, const Point& x);

/// f(x) + f(y) - 2 f(m) with m the midpoint of [x, y].
double convexity_defect(const ScalarField& f, const Point& x, const Point& y);

using WitnessPair = std::pair<Point, Point>;

/// r(h): sum of convexity defects of h over the witness pairs.
double affinity_defect(const ScalarField& f, const std::vector<WitnessPair>& witnesses);

/// Sum of r over the fields.
double affinity_defect_functional(const std::vector<ScalarField>& fields,
                                  const std::vector<WitnessPair>& witnesses);

}  // namespace hadamard
