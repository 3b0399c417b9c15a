#ifndef MINCL_SETS_HPP
#define MINCL_SETS_HPP

#include <functional>
#include <string>

#include "mincl/linalg.hpp"
#include "mincl/operators.hpp"
#include "mincl/report.hpp"

namespace mincl {

// Closed convex set with an exact Euclidean projection. `diameter` is stored
// metadata (infinity for unbounded sets), never computed.
struct FeasibleSet {
  std::function<Vec(const Vec&)> project;
  double diameter = 0.0;
  std::string description;
  int dim = 0;
  bool whole_space = false;

  /// Feasibility up to projection tolerance: ||u - project(u)|| <= tol.
  bool contains(const Vec& u, double tol = 1e-9) const;
};

/// Componentwise clamp. Crossed bounds are a hard error.
Vec project_box(const Vec& lower, const Vec& upper, const Vec& u);

/// Radial projection onto a closed ball.
Vec project_ball(const Vec& center, double radius, const Vec& u);

/// Euclidean projection onto the probability simplex {v >= 0, sum v = 1},
/// by sort-and-threshold.
Vec project_simplex(const Vec& u);

FeasibleSet make_whole_space(int dim);
FeasibleSet make_box_set(Vec lower, Vec upper);
FeasibleSet make_ball_set(Vec center, double radius);
FeasibleSet make_simplex_set(int dim);

/// Counted projection used by the solvers.
Vec project_counted(const FeasibleSet& set, const Vec& u, OracleCounter& counter);

/// Operator mapping G_eta(u) = eta * (u - proj(u - F(u)/eta)). Costs one
/// operator evaluation and one projection. On the whole space it returns
/// F(u) exactly (no projection round-trip through floating point).
Vec operator_mapping(const Operator& f, const FeasibleSet& set, double eta, const Vec& u,
                     OracleCounter& counter);

}  // namespace mincl

#endif
