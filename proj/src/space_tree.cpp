#include "hadamard/error.hpp"
#include "hadamard/tolerance.hpp"
#include "hadamard/tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace hadamard {
namespace {
constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

MetricTree MetricTree::star(const std::vector<double>& leg_lengths) {
  MetricTree t;
  t.vertex_count = 1;
  for (double len : leg_lengths) {
    TreeEdge e;
    e.from = 0;
    if (std::isfinite(len)) {
      e.to = t.vertex_count++;
      e.length = len;
    }
    t.edges.push_back(e);
  }
  return t;
}

TreeSpace::TreeSpace(MetricTree tree) : tree_(std::move(tree)) {
  const std::size_t n = tree_.vertex_count;
  if (n == 0) throw UsageError("tree needs at least one vertex");
  if (tree_.edges.empty()) throw UsageError("tree needs at least one edge");
  incident_.assign(n, {});
  std::size_t finite = 0;
  for (std::size_t i = 0; i < tree_.edges.size(); ++i) {
    const auto& e = tree_.edges[i];
    if (e.from >= n || (e.to && *e.to >= n)) throw UsageError("tree edge references a missing vertex");
    if (e.is_ray()) {
      tree_.edges[i].length = kInf;
      rays_.push_back(i);
      incident_[e.from].push_back(i);
      continue;
    }
    if (!(e.length > 0.0) || !std::isfinite(e.length)) throw UsageError("tree edge lengths must be positive");
    if (*e.to == e.from) throw UsageError("tree edges may not be loops");
    ++finite;
    incident_[e.from].push_back(i);
    incident_[*e.to].push_back(i);
  }
  if (finite != n - 1) throw UsageError("tree must have exactly vertex_count - 1 finite edges");

  vdist_.assign(n, std::vector<double>(n, kInf));
  next_.assign(n, std::vector<Hop>(n, Hop{kNone, kNone}));
  for (std::size_t s = 0; s < n; ++s) {
    vdist_[s][s] = 0.0;
    std::queue<std::size_t> q;
    q.push(s);
    while (!q.empty()) {
      const std::size_t v = q.front();
      q.pop();
      for (std::size_t ei : incident_[v]) {
        const auto& e = tree_.edges[ei];
        if (e.is_ray()) continue;
        const std::size_t w = e.from == v ? *e.to : e.from;
        if (std::isfinite(vdist_[s][w])) continue;
        vdist_[s][w] = vdist_[s][v] + e.length;
        next_[s][w] = v == s ? Hop{w, ei} : next_[s][v];
        q.push(w);
      }
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (!std::isfinite(vdist_[s][v])) throw UsageError("tree is not connected");
    }
  }
}

std::string TreeSpace::describe() const {
  return "tree:" + std::to_string(tree_.vertex_count) + "v/" + std::to_string(tree_.edges.size()) + "e";
}

const TreeLocation& TreeSpace::loc(const Point& x) const {
  const auto& l = x.tree_location();
  if (l.edge >= tree_.edges.size()) throw UsageError("tree location references a missing edge");
  return l;
}

void TreeSpace::validate(const Point& x) const {
  if (!x.has_tree_location()) throw UsageError("point does not belong to " + describe());
  const auto& l = loc(x);
  const double tol = default_tolerances().membership;
  if (!std::isfinite(l.offset) || l.offset < -tol || l.offset > tree_.edges[l.edge].length + tol)
    throw UsageError("tree offset outside its edge");
}

Point TreeSpace::at(std::size_t edge, double offset) const {
  if (edge >= tree_.edges.size()) throw UsageError("tree location references a missing edge");
  return TreeLocation{edge, std::clamp(offset, 0.0, tree_.edges[edge].length)};
}

Point TreeSpace::vertex_location(std::size_t v) const {
  if (v >= tree_.vertex_count || incident_[v].empty()) throw UsageError("tree vertex out of range");
  const std::size_t e = incident_[v].front();
  return at(e, tree_.edges[e].from == v ? 0.0 : tree_.edges[e].length);
}

std::optional<std::size_t> TreeSpace::vertex_at(const TreeLocation& l) const {
  const auto& e = tree_.edges[l.edge];
  if (l.offset <= 1e-12) return e.from;
  if (e.to && l.offset >= e.length - 1e-12) return *e.to;
  return std::nullopt;
}

double TreeSpace::exit_distance(const TreeLocation& a, std::size_t v) const {
  const auto& e = tree_.edges[a.edge];
  return v == e.from ? a.offset : e.length - a.offset;
}

double TreeSpace::distance_to_vertex(const TreeLocation& a, std::size_t v) const {
  const auto& e = tree_.edges[a.edge];
  double best = exit_distance(a, e.from) + vdist_[e.from][v];
  if (e.to) best = std::min(best, exit_distance(a, *e.to) + vdist_[*e.to][v]);
  return best;
}

std::pair<std::size_t, std::size_t> TreeSpace::exits(const TreeLocation& a,
                                                     const TreeLocation& b) const {
  const auto& ea = tree_.edges[a.edge];
  const auto& eb = tree_.edges[b.edge];
  std::vector<std::size_t> ua{ea.from};
  if (ea.to) ua.push_back(*ea.to);
  std::vector<std::size_t> wb{eb.from};
  if (eb.to) wb.push_back(*eb.to);
  std::pair<std::size_t, std::size_t> best{ua[0], wb[0]};
  double bd = kInf;
  for (std::size_t u : ua) {
    for (std::size_t w : wb) {
      const double d = exit_distance(a, u) + vdist_[u][w] + exit_distance(b, w);
      if (d < bd) {
        bd = d;
        best = {u, w};
      }
    }
  }
  return best;
}

double TreeSpace::distance(const Point& x, const Point& y) const {
  const auto& a = loc(x);
  const auto& b = loc(y);
  if (a.edge == b.edge) return std::abs(a.offset - b.offset);
  const auto [u, w] = exits(a, b);
  return exit_distance(a, u) + vdist_[u][w] + exit_distance(b, w);
}

Point TreeSpace::walk(const TreeLocation& a, const TreeLocation& b, double s) const {
  const auto [u, w] = exits(a, b);
  const double d1 = exit_distance(a, u);
  if (s <= d1) return at(a.edge, u == tree_.edges[a.edge].from ? a.offset - s : a.offset + s);
  s -= d1;
  std::size_t cur = u;
  while (cur != w) {
    const Hop hop = next_[cur][w];
    const auto& e = tree_.edges[hop.edge];
    if (s <= e.length) return at(hop.edge, e.from == cur ? s : e.length - s);
    s -= e.length;
    cur = hop.vertex;
  }
  const auto& eb = tree_.edges[b.edge];
  s = std::min(s, exit_distance(b, w));
  return at(b.edge, w == eb.from ? s : eb.length - s);
}

Point TreeSpace::geodesic_point(const Point& x, const Point& y, double t) const {
  if (t <= 0.0) return x;
  if (t >= 1.0) return y;
  const auto& a = loc(x);
  const auto& b = loc(y);
  if (a.edge == b.edge) return at(a.edge, a.offset + t * (b.offset - a.offset));
  return walk(a, b, t * distance(x, y));
}

Point TreeSpace::radial_point(const Point& p, const Point& q, double r) const {
  const double d = distance(p, q);
  if (d == 0.0) return p;
  if (r <= d) return geodesic_point(p, q, r / d);
  const auto& a = loc(p);
  const auto& b = loc(q);
  // Beyond q the ray continues along q's edge if q is interior; at a vertex
  // there is no canonical continuation and the ray stops.
  if (vertex_at(b)) return q;
  double sign = 0.0;
  if (a.edge == b.edge) {
    sign = b.offset > a.offset ? 1.0 : -1.0;
  } else {
    const std::size_t w = exits(a, b).second;
    sign = w == tree_.edges[b.edge].from ? 1.0 : -1.0;
  }
  return at(b.edge, b.offset + sign * (r - d));
}

void TreeSpace::branch_probes(std::size_t vertex, std::size_t via_edge, double remaining,
                              std::vector<Point>& out) const {
  bool any = false;
  for (std::size_t ei : incident_[vertex]) {
    if (ei == via_edge) continue;
    any = true;
    const auto& e = tree_.edges[ei];
    if (remaining <= e.length) {
      out.push_back(at(ei, e.from == vertex ? remaining : e.length - remaining));
    } else {
      const std::size_t far = e.from == vertex ? *e.to : e.from;
      branch_probes(far, ei, remaining - e.length, out);
    }
  }
  if (!any) out.push_back(vertex_location(vertex));
}

std::vector<Point> TreeSpace::probe_sphere(const Point& p, double r, std::size_t /*count*/) const {
  const auto& a = loc(p);
  std::vector<Point> out;
  if (const auto v = vertex_at(a)) {
    branch_probes(*v, kNone, r, out);
    return out;
  }
  const auto& e = tree_.edges[a.edge];
  if (r <= a.offset) {
    out.push_back(at(a.edge, a.offset - r));
  } else {
    branch_probes(e.from, a.edge, r - a.offset, out);
  }
  const double ahead = e.length - a.offset;
  if (r <= ahead) {
    out.push_back(at(a.edge, a.offset + r));
  } else {
    branch_probes(*e.to, a.edge, r - ahead, out);
  }
  return out;
}

Point TreeSpace::sample(std::mt19937_64& rng, double scale) const {
  const std::size_t ei = std::uniform_int_distribution<std::size_t>(0, tree_.edges.size() - 1)(rng);
  const double len = std::min(tree_.edges[ei].length, scale);
  return at(ei, std::uniform_real_distribution<double>(0.0, len)(rng));
}

void TreeSpace::validate(const BoundaryDirection& u) const {
  const auto* r = std::get_if<TreeRay>(&u.data);
  if (r == nullptr || r->edge >= tree_.edges.size() || !tree_.edges[r->edge].is_ray())
    throw UsageError("boundary direction must name an infinite ray of the tree");
}

Point TreeSpace::ray_point(const Point& x, const BoundaryDirection& u, double t) const {
  const std::size_t ray = u.ray().edge;
  const auto& a = loc(x);
  if (a.edge == ray) return at(ray, a.offset + t);
  const std::size_t v = tree_.edges[ray].from;
  const double dv = distance_to_vertex(a, v);
  if (t <= dv) return geodesic_point(x, vertex_location(v), t / dv);
  return at(ray, t - dv);
}

double TreeSpace::busemann(const BoundaryDirection& u, const Point& base, const Point& x) const {
  const std::size_t ray = u.ray().edge;
  const std::size_t v = tree_.edges[ray].from;
  auto h = [&](const TreeLocation& l) {
    return l.edge == ray ? -l.offset : distance_to_vertex(l, v);
  };
  return h(loc(x)) - h(loc(base));
}

SpacePtr make_tree(MetricTree tree) { return std::make_shared<TreeSpace>(std::move(tree)); }

}  // namespace hadamard
