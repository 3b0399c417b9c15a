#ifndef MINCL_HALPERN_HPP
#define MINCL_HALPERN_HPP

#include <cstdint>
#include <functional>
#include <optional>

#include "mincl/operators.hpp"
#include "mincl/report.hpp"
#include "mincl/sets.hpp"

namespace mincl {

/// Anchoring-weight potential at the current iterate:
/// (1/L) ||F(u)||^2 - (lambda/(1-lambda)) <F(u), u0 - u>.
/// lambda >= 1 is a hard error.
double potential_value(const Vec& f_at_u, const Vec& u0, const Vec& u, double lambda, double L);

/// One step of the anchoring-weight recurrence:
/// p = (L_prev/L_curr) * lambda_prev/(1 - lambda_prev), result p/(1+2p).
/// Output is always in (0, 1/2).
double lambda_update(double lambda_prev, double L_prev, double L_curr);

/// True iff <F(u)-F(u_prev), u-u_prev> >= (1/L) ||F(u)-F(u_prev)||^2 up to
/// rounding slack, i.e. the estimate L needs no doubling at this pair.
bool cocoercivity_condition(const Vec& f_at_u, const Vec& f_at_u_prev, const Vec& u,
                            const Vec& u_prev, double L);

// Per-iteration snapshot handed to an optional observer. References are only
// valid during the callback.
struct CocoerciveStep {
  std::int64_t k;
  const Vec& u;
  const Vec& f_at_u;
  double lambda;
  double L;
  double potential;
  double potential_weight;  // A_k
};

struct ConstrainedStep {
  std::int64_t k;
  const Vec& u;
  const Vec& ubar;
  const Vec& g;  // operator mapping at u with eta = L
  double lambda;
  double L;
  double l_local;  // ||F(ubar)-F(u)|| / ||ubar-u||, 0 in the simple variant
};

struct HalpernOptions {
  double L0 = 1.0;
  std::int64_t max_iters = -1;  // <0: derived from distance_hint when possible
  std::optional<double> distance_hint;  // ||u0 - u*|| when known, used only for the cap
  std::function<void(const CocoerciveStep&)> on_step;
  std::function<void(const ConstrainedStep&)> on_constrained_step;
};

/// Anchored iteration with doubling Lipschitz estimates for cocoercive
/// operators on the whole space. Stops when ||F(u_k)|| <= eps. Nonconvergence
/// (iteration cap) is a report state, never an exception.
SolverReport halpern_cocoercive_solve(const Operator& f, const Vec& u0, double eps,
                                      const HalpernOptions& opts = {});

/// Constrained variant driving the operator mapping G_{L_k} to zero. Exits
/// when ||G_{L_k}(u_k)|| <= eps / (1 + Lbar_k/L_k), which certifies a unit
/// restricted gap of at most eps at the companion point ubar_k.
SolverReport halpern_constrained_solve(const Operator& f, const FeasibleSet& set, const Vec& u0,
                                       double eps, const HalpernOptions& opts = {});

/// Same iteration but with the plain exit test ||G_{L_k}(u_k)|| <= eps,
/// skipping the local-Lipschitz bookkeeping (one fewer F query per step).
SolverReport halpern_constrained_simple_solve(const Operator& f, const FeasibleSet& set,
                                              const Vec& u0, double eps,
                                              const HalpernOptions& opts = {});

}  // namespace mincl

#endif
