#ifndef MINCL_GAP_HPP
#define MINCL_GAP_HPP

#include <vector>

#include "mincl/operators.hpp"
#include "mincl/sets.hpp"

namespace mincl {

// Controls the inner maximization of restricted_gap.
struct GapOptions {
  double tol = 1e-10;
  int max_iters = 1000;
};

/// max over v in (set ∩ ball(u, radius)) of <F(u), u - v>.
///
/// The objective is linear in v, so the maximum is found by minimizing
/// <F(u), v> over the intersection: project the steepest point u - t*F(u)
/// onto the set and drive the offset t with a bisection until the ball
/// constraint is tight (or provably inactive). Requires u feasible.
double restricted_gap(const Operator& f, const FeasibleSet& set, const Vec& u, double radius,
                      const GapOptions& opts = {});

// Prefix diagnostics for an anchoring step-size sequence: whether the prefix
// is strictly decreasing, its running sum, and the running sum of successive
// absolute differences. The limit conditions themselves are not decidable on
// a prefix; this is a reporting utility.
struct StepSizeDiagnostics {
  bool decreasing = false;
  double lambda_sum = 0.0;
  double abs_diff_sum = 0.0;
};

/// Every lambda must lie in (0, 1); anything else is a hard error.
StepSizeDiagnostics check_halpern_step_conditions(const std::vector<double>& lambdas);

}  // namespace mincl

#endif
