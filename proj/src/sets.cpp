#include "mincl/sets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

namespace mincl {

bool FeasibleSet::contains(const Vec& u, double tol) const {
  if (static_cast<int>(u.size()) != dim) return false;
  if (whole_space) return true;
  return dist(u, project(u)) <= tol;
}

Vec project_box(const Vec& lower, const Vec& upper, const Vec& u) {
  if (lower.size() != upper.size() || lower.size() != u.size()) {
    throw std::invalid_argument("project_box: dimension mismatch");
  }
  for (size_t i = 0; i < lower.size(); ++i) {
    if (lower[i] > upper[i]) throw std::invalid_argument("project_box: crossed bounds");
  }
  Vec w(u.size());
  for (size_t i = 0; i < u.size(); ++i) w[i] = std::clamp(u[i], lower[i], upper[i]);
  return w;
}

Vec project_ball(const Vec& center, double radius, const Vec& u) {
  if (radius <= 0.0) throw std::invalid_argument("project_ball: radius must be positive");
  if (center.size() != u.size()) throw std::invalid_argument("project_ball: dimension mismatch");
  Vec d = sub(u, center);
  double n = norm(d);
  if (n <= radius) return u;
  return add(center, scaled(d, radius / n));
}

Vec project_simplex(const Vec& u) {
  if (u.empty()) throw std::invalid_argument("project_simplex: empty vector");
  // Sort descending, find the largest k with sorted[k] - tau_k > 0 where
  // tau_k = (prefix_sum - 1) / (k+1).
  Vec sorted = u;
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  double prefix = 0.0;
  double tau = 0.0;
  for (size_t k = 0; k < sorted.size(); ++k) {
    prefix += sorted[k];
    double t = (prefix - 1.0) / static_cast<double>(k + 1);
    if (sorted[k] - t > 0.0) tau = t;
  }
  Vec w(u.size());
  for (size_t i = 0; i < u.size(); ++i) w[i] = std::max(0.0, u[i] - tau);
  return w;
}

FeasibleSet make_whole_space(int dim) {
  FeasibleSet s;
  s.dim = dim;
  s.whole_space = true;
  s.diameter = std::numeric_limits<double>::infinity();
  s.description = "whole-space";
  s.project = [](const Vec& u) { return u; };
  return s;
}

FeasibleSet make_box_set(Vec lower, Vec upper) {
  if (lower.size() != upper.size()) throw std::invalid_argument("make_box_set: dimension mismatch");
  for (size_t i = 0; i < lower.size(); ++i) {
    if (lower[i] > upper[i]) throw std::invalid_argument("make_box_set: crossed bounds");
  }
  FeasibleSet s;
  s.dim = static_cast<int>(lower.size());
  s.diameter = dist(upper, lower);
  s.description = "box";
  auto lo = std::make_shared<Vec>(std::move(lower));
  auto hi = std::make_shared<Vec>(std::move(upper));
  s.project = [lo, hi](const Vec& u) { return project_box(*lo, *hi, u); };
  return s;
}

FeasibleSet make_ball_set(Vec center, double radius) {
  if (radius <= 0.0) throw std::invalid_argument("make_ball_set: radius must be positive");
  FeasibleSet s;
  s.dim = static_cast<int>(center.size());
  s.diameter = 2.0 * radius;
  s.description = "ball";
  auto c = std::make_shared<Vec>(std::move(center));
  s.project = [c, radius](const Vec& u) { return project_ball(*c, radius, u); };
  return s;
}

FeasibleSet make_simplex_set(int dim) {
  if (dim < 1) throw std::invalid_argument("make_simplex_set: dimension must be >= 1");
  FeasibleSet s;
  s.dim = dim;
  s.diameter = std::sqrt(2.0);
  s.description = "simplex";
  s.project = [](const Vec& u) { return project_simplex(u); };
  return s;
}

Vec project_counted(const FeasibleSet& set, const Vec& u, OracleCounter& counter) {
  if (static_cast<int>(u.size()) != set.dim) {
    throw std::invalid_argument("projection: dimension mismatch");
  }
  ++counter.projections;
  if (set.whole_space) return u;
  Vec w = set.project(u);
  ensure_finite(w, "projection value");
  return w;
}

Vec operator_mapping(const Operator& f, const FeasibleSet& set, double eta, const Vec& u,
                     OracleCounter& counter) {
  if (eta <= 0.0) throw std::invalid_argument("operator_mapping: eta must be positive");
  Vec fu = eval_counted(f, u, counter);
  if (set.whole_space) {
    ++counter.projections;
    return fu;
  }
  Vec ubar = project_counted(set, sub(u, scaled(fu, 1.0 / eta)), counter);
  return scaled(sub(u, ubar), eta);
}

}  // namespace mincl
