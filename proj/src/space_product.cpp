#include "hadamard/error.hpp"
#include "hadamard/product.hpp"

#include <algorithm>
#include <cmath>

namespace hadamard {

ProductSpace::ProductSpace(std::vector<SpacePtr> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw UsageError("product needs at least one factor");
  for (const auto& f : factors_) {
    if (!f) throw UsageError("null product factor");
  }
}

std::size_t ProductSpace::dimension() const {
  std::size_t n = 0;
  for (const auto& f : factors_) n += f->dimension();
  return n;
}

std::string ProductSpace::describe() const {
  std::string s = "product(";
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i > 0) s += ",";
    s += factors_[i]->describe();
  }
  return s + ")";
}

bool ProductSpace::is_cat0() const {
  return std::all_of(factors_.begin(), factors_.end(), [](const auto& f) { return f->is_cat0(); });
}

void ProductSpace::validate(const Point& x) const {
  if (!x.has_parts() || x.parts().size() != factors_.size())
    throw UsageError("point does not belong to " + describe());
  for (std::size_t i = 0; i < factors_.size(); ++i) factors_[i]->validate(x.parts()[i]);
}

double ProductSpace::distance(const Point& x, const Point& y) const {
  double s = 0.0;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const double d = factors_[i]->distance(x.parts()[i], y.parts()[i]);
    s += d * d;
  }
  return std::sqrt(s);
}

Point ProductSpace::geodesic_point(const Point& x, const Point& y, double t) const {
  if (t <= 0.0) return x;
  if (t >= 1.0) return y;
  std::vector<Point> parts;
  for (std::size_t i = 0; i < factors_.size(); ++i)
    parts.push_back(factors_[i]->geodesic_point(x.parts()[i], y.parts()[i], t));
  return Point(std::move(parts));
}

Point ProductSpace::radial_point(const Point& p, const Point& q, double r) const {
  const double d = distance(p, q);
  if (d == 0.0) return p;
  std::vector<Point> parts;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const double di = factors_[i]->distance(p.parts()[i], q.parts()[i]);
    parts.push_back(di == 0.0 ? p.parts()[i]
                              : factors_[i]->radial_point(p.parts()[i], q.parts()[i], r * di / d));
  }
  return Point(std::move(parts));
}

std::optional<std::size_t> ProductSpace::chart_dimension(const Point& p) const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const auto k = factors_[i]->chart_dimension(p.parts()[i]);
    if (!k) return std::nullopt;
    n += *k;
  }
  return n;
}

Point ProductSpace::chart_exp(const Point& p, const Vector& direction, double r) const {
  std::vector<Point> parts;
  Eigen::Index at = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(*factors_[i]->chart_dimension(p.parts()[i]));
    const Vector block = direction.segment(at, k);
    at += k;
    const double n = block.norm();
    parts.push_back(n == 0.0 ? p.parts()[i] : factors_[i]->chart_exp(p.parts()[i], block / n, r * n));
  }
  return Point(std::move(parts));
}

std::vector<Point> ProductSpace::probe_sphere(const Point& p, double r, std::size_t count) const {
  if (chart_dimension(p)) return Space::probe_sphere(p, r, count);
  // Some factor is a tree: split the radius by weight vectors and combine
  // factor probes.
  const std::size_t k = factors_.size();
  std::vector<Vector> weights;
  for (const auto& u : unit_directions(k, 16)) {
    Vector w = u.cwiseAbs();
    bool dup = false;
    for (const auto& v : weights) dup = dup || (v - w).norm() < 1e-9;
    if (!dup) weights.push_back(w);
  }
  const std::size_t per_factor = 8;
  std::vector<Point> out;
  for (const auto& w : weights) {
    std::vector<std::vector<Point>> choices;
    for (std::size_t i = 0; i < k; ++i) {
      const double ri = r * w(static_cast<Eigen::Index>(i));
      std::vector<Point> c;
      if (ri == 0.0) {
        c.push_back(p.parts()[i]);
      } else {
        c = factors_[i]->probe_sphere(p.parts()[i], ri, per_factor);
        if (c.size() > per_factor) c.resize(per_factor);
      }
      choices.push_back(std::move(c));
    }
    std::vector<std::size_t> idx(k, 0);
    while (true) {
      std::vector<Point> parts;
      for (std::size_t i = 0; i < k; ++i) parts.push_back(choices[i][idx[i]]);
      out.emplace_back(std::move(parts));
      std::size_t j = 0;
      while (j < k && ++idx[j] == choices[j].size()) idx[j++] = 0;
      if (j == k) break;
    }
  }
  return out;
}

Point ProductSpace::sample(std::mt19937_64& rng, double scale) const {
  const double s = scale / std::sqrt(static_cast<double>(factors_.size()));
  std::vector<Point> parts;
  for (const auto& f : factors_) parts.push_back(f->sample(rng, s));
  return Point(std::move(parts));
}

Point ProductSpace::origin() const {
  std::vector<Point> parts;
  for (const auto& f : factors_) parts.push_back(f->origin());
  return Point(std::move(parts));
}

bool ProductSpace::supports_boundary() const {
  return std::any_of(factors_.begin(), factors_.end(),
                     [](const auto& f) { return f->supports_boundary(); });
}

void ProductSpace::validate(const BoundaryDirection& u) const {
  const auto* d = std::get_if<ProductDirection>(&u.data);
  if (d == nullptr || d->weights.size() != factors_.size() || d->parts.size() != factors_.size())
    throw UsageError("boundary direction does not belong to " + describe());
  double s = 0.0;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const double w = d->weights[i];
    if (!(w >= 0.0)) throw UsageError("product direction weights must be non-negative");
    s += w * w;
    if (w > 0.0) factors_[i]->validate(d->parts[i]);
  }
  if (std::abs(s - 1.0) > 1e-12) throw UsageError("product direction weights must have unit l2 norm");
}

Point ProductSpace::ray_point(const Point& x, const BoundaryDirection& u, double t) const {
  const auto& d = u.product();
  std::vector<Point> parts;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const double w = d.weights[i];
    parts.push_back(w > 0.0 ? factors_[i]->ray_point(x.parts()[i], d.parts[i], t * w) : x.parts()[i]);
  }
  return Point(std::move(parts));
}

double ProductSpace::busemann(const BoundaryDirection& u, const Point& base, const Point& x) const {
  const auto& d = u.product();
  double s = 0.0;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const double w = d.weights[i];
    if (w > 0.0) s += w * factors_[i]->busemann(d.parts[i], base.parts()[i], x.parts()[i]);
  }
  return s;
}

SpacePtr make_product(std::vector<SpacePtr> factors) {
  return std::make_shared<ProductSpace>(std::move(factors));
}

}  // namespace hadamard
