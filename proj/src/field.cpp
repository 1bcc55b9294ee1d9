#include "hadamard/field.hpp"

#include "hadamard/error.hpp"
#include "overloaded.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hadamard {

using detail::Overloaded;

namespace {

void require_members_share(const SpacePtr& space, const ScalarField& f) {
  if (f.space() != space && f.space()->describe() != space->describe())
    throw UsageError("combined fields must live on one space");
}

}  // namespace

ScalarField::ScalarField(SpacePtr space, Form form) : space_(std::move(space)), form_(std::move(form)) {
  if (!space_) throw UsageError("scalar field needs a space");
}

double ScalarField::operator()(const Point& x) const { return evaluate(*this, x); }

ScalarField distance_field(ConvexBody body) {
  SpacePtr space = body.space();
  return ScalarField(std::move(space), DistanceTo{std::move(body)});
}

ScalarField normalized_distance(SpacePtr space, Point anchor, Point basepoint) {
  space->validate(anchor);
  space->validate(basepoint);
  return ScalarField(std::move(space), NormalizedDistance{std::move(anchor), std::move(basepoint)});
}

ScalarField busemann_field(SpacePtr space, BoundaryDirection direction, Point basepoint) {
  space->validate(direction);
  space->validate(basepoint);
  return ScalarField(std::move(space), Busemann{std::move(direction), std::move(basepoint)});
}

ScalarField affine_field(SpacePtr space, Vector normal, double constant) {
  if (!space->is_euclidean_type()) throw CapabilityError("affine fields need a Euclidean-type space");
  if (static_cast<std::size_t>(normal.size()) != space->dimension())
    throw UsageError("affine normal has the wrong dimension");
  return ScalarField(std::move(space), Affine{std::move(normal), constant});
}

ScalarField max_of(std::vector<ScalarField> members) {
  if (members.empty()) throw UsageError("max of an empty list");
  SpacePtr space = members.front().space();
  for (const auto& m : members) require_members_share(space, m);
  return ScalarField(std::move(space), MaxOf{std::move(members)});
}

ScalarField inf_shift_of(std::vector<std::pair<ScalarField, double>> members) {
  if (members.empty()) throw UsageError("inf of an empty list");
  SpacePtr space = members.front().first.space();
  for (const auto& m : members) {
    require_members_share(space, m.first);
    if (!std::isfinite(m.second)) throw UsageError("shift constants must be finite");
  }
  return ScalarField(std::move(space), InfShiftOf{std::move(members)});
}

ScalarField convex_combination(std::vector<std::pair<double, ScalarField>> terms) {
  if (terms.empty()) throw UsageError("convex combination of an empty list");
  SpacePtr space = terms.front().second.space();
  double total = 0.0;
  for (const auto& [w, f] : terms) {
    require_members_share(space, f);
    if (!(w >= 0.0)) throw UsageError("convex combination weights must be non-negative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) throw UsageError("convex combination weights must sum to 1");
  return ScalarField(std::move(space), ConvexCombination{std::move(terms)});
}

ScalarField shifted(ScalarField f, double c) { return inf_shift_of({{std::move(f), c}}); }

ScalarField negate(const ScalarField& f) {
  const auto& space = f.space();
  return std::visit(
      Overloaded{
          [&](const Affine& a) { return affine_field(space, -a.normal, -a.constant); },
          [&](const MaxOf& m) {
            std::vector<std::pair<ScalarField, double>> out;
            for (const auto& g : m.members) out.emplace_back(negate(g), 0.0);
            return inf_shift_of(std::move(out));
          },
          [&](const InfShiftOf& m) {
            std::vector<ScalarField> out;
            for (const auto& [g, c] : m.members) {
              const auto* a = std::get_if<Affine>(&g.form());
              if (a == nullptr) throw CapabilityError("only shifts of affine fields can be negated");
              out.push_back(affine_field(space, -a->normal, -(a->constant + c)));
            }
            return max_of(std::move(out));
          },
          [](const auto&) -> ScalarField {
            throw CapabilityError("negation is only available for affine and max/inf-of-affine fields");
          },
      },
      f.form());
}

double evaluate(const ScalarField& f, const Point& x) {
  const Space& space = *f.space();
  return std::visit(Overloaded{
                        [&](const DistanceTo& d) { return distance_to(d.body, x); },
                        [&](const NormalizedDistance& n) {
                          return space.distance(x, n.anchor) - space.distance(n.basepoint, n.anchor);
                        },
                        [&](const Busemann& b) { return space.busemann(b.direction, b.basepoint, x); },
                        [&](const Affine& a) { return a.normal.dot(x.coords()) + a.constant; },
                        [&](const MaxOf& m) {
                          double v = -std::numeric_limits<double>::infinity();
                          for (const auto& g : m.members) v = std::max(v, evaluate(g, x));
                          return v;
                        },
                        [&](const InfShiftOf& m) {
                          double v = std::numeric_limits<double>::infinity();
                          for (const auto& [g, c] : m.members) v = std::min(v, evaluate(g, x) + c);
                          return v;
                        },
                        [&](const ConvexCombination& c) {
                          double v = 0.0;
                          for (const auto& [w, g] : c.terms) v += w * evaluate(g, x);
                          return v;
                        },
                    },
                    f.form());
}

bool is_affine(const ScalarField& f) {
  return std::visit(Overloaded{
                        [](const Affine&) { return true; },
                        [](const MaxOf& m) { return m.members.size() == 1 && is_affine(m.members[0]); },
                        [](const InfShiftOf& m) {
                          return m.members.size() == 1 && is_affine(m.members[0].first);
                        },
                        [](const ConvexCombination& c) {
                          return std::all_of(c.terms.begin(), c.terms.end(),
                                             [](const auto& t) { return is_affine(t.second); });
                        },
                        [](const auto&) { return false; },
                    },
                    f.form());
}

bool is_convex(const ScalarField& f) {
  const bool cat0 = f.space()->is_cat0();
  return std::visit(Overloaded{
                        [&](const DistanceTo&) { return cat0; },
                        [&](const NormalizedDistance&) { return cat0; },
                        [](const Busemann&) { return true; },
                        [](const Affine&) { return true; },
                        [](const MaxOf& m) {
                          return std::all_of(m.members.begin(), m.members.end(),
                                             [](const auto& g) { return is_convex(g); });
                        },
                        [](const InfShiftOf& m) {
                          return m.members.size() == 1 && is_convex(m.members[0].first);
                        },
                        [](const ConvexCombination& c) {
                          return std::all_of(c.terms.begin(), c.terms.end(),
                                             [](const auto& t) { return is_convex(t.second); });
                        },
                    },
                    f.form());
}

bool is_concave(const ScalarField& f) {
  return std::visit(Overloaded{
                        [](const Affine&) { return true; },
                        [](const MaxOf& m) { return m.members.size() == 1 && is_concave(m.members[0]); },
                        [](const InfShiftOf& m) {
                          return std::all_of(m.members.begin(), m.members.end(),
                                             [](const auto& g) { return is_concave(g.first); });
                        },
                        [](const ConvexCombination& c) {
                          return std::all_of(c.terms.begin(), c.terms.end(),
                                             [](const auto& t) { return is_concave(t.second); });
                        },
                        [](const auto&) { return false; },
                    },
                    f.form());
}

double lipschitz_bound(const ScalarField& f) {
  return std::visit(Overloaded{
                        [](const Affine& a) { return a.normal.norm(); },
                        [](const MaxOf& m) {
                          double l = 0.0;
                          for (const auto& g : m.members) l = std::max(l, lipschitz_bound(g));
                          return l;
                        },
                        [](const InfShiftOf& m) {
                          double l = 0.0;
                          for (const auto& g : m.members) l = std::max(l, lipschitz_bound(g.first));
                          return l;
                        },
                        [](const ConvexCombination& c) {
                          double l = 0.0;
                          for (const auto& [w, g] : c.terms) l += w * lipschitz_bound(g);
                          return l;
                        },
                        // Distance, normalized distance and Busemann functions.
                        [](const auto&) { return 1.0; },
                    },
                    f.form());
}

std::size_t active_member(const ScalarField& f, const Point& x) {
  if (const auto* m = std::get_if<MaxOf>(&f.form())) {
    std::size_t best = 0;
    double v = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m->members.size(); ++i) {
      const double fi = evaluate(m->members[i], x);
      if (fi > v) {
        v = fi;
        best = i;
      }
    }
    return best;
  }
  if (const auto* m = std::get_if<InfShiftOf>(&f.form())) {
    std::size_t best = 0;
    double v = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m->members.size(); ++i) {
      const double fi = evaluate(m->members[i].first, x) + m->members[i].second;
      if (fi < v) {
        v = fi;
        best = i;
      }
    }
    return best;
  }
  throw UsageError("active_member needs a max or inf field");
}

double convexity_defect(const ScalarField& f, const Point& x, const Point& y) {
  const Point m = f.space()->geodesic_point(x, y, 0.5);
  return evaluate(f, x) + evaluate(f, y) - 2.0 * evaluate(f, m);
}

double affinity_defect(const ScalarField& f, const std::vector<WitnessPair>& witnesses) {
  if (witnesses.empty()) throw UsageError("affinity defect needs at least one witness pair");
  double r = 0.0;
  for (const auto& [x, y] : witnesses) r += convexity_defect(f, x, y);
  return r;
}

double affinity_defect_functional(const std::vector<ScalarField>& fields,
                                  const std::vector<WitnessPair>& witnesses) {
  double r = 0.0;
  for (const auto& f : fields) r += affinity_defect(f, witnesses);
  return r;
}

}  // namespace hadamard
