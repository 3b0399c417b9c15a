#ifndef MINCL_INEXACT_HPP
#define MINCL_INEXACT_HPP

#include <cstdint>
#include <functional>
#include <optional>

#include "mincl/operators.hpp"
#include "mincl/report.hpp"
#include "mincl/resolvent.hpp"
#include "mincl/sets.hpp"

namespace mincl {

// Resolvent-accuracy schedule for the inexact anchored iteration: the error
// budget at iteration k, relative to the outer target.
struct InexactnessBudget {
  double eps_target = 0.0;

  double at(std::int64_t k) const {
    if (k == 0) return eps_target / 8.0;
    return eps_target / (8.0 * static_cast<double>(k + 1) * static_cast<double>(k + 2));
  }
};

struct LipschitzStep {
  std::int64_t k;
  const Vec& u;
  const Vec& ubar;      // certified resolvent point at u
  double ptilde_norm;   // ||u - ubar||
  double cert_error;    // resolvent error bound at this iteration
  double lambda;        // 0 for the initial record
};

struct RestartRound {
  std::int64_t round;
  const Vec& u;
  double ptilde_norm;
  double cert_error;
  double round_eps;  // error parameter handed to the inner solve (0 for round 0)
  std::int64_t f_evals;
};

struct InexactOptions {
  std::int64_t max_iters = -1;  // outer iterations (or restart rounds)
  std::optional<double> distance_hint;
  std::function<void(const LipschitzStep&)> on_step;
  std::function<void(const RestartRound&)> on_round;
};

/// Anchored iteration on the displacement of the resolvent, for operators
/// that are only monotone and Lipschitz. Uses lambda_k = 1/(k+1) (the
/// displacement is 1/2-cocoercive, so no estimate is needed) and resolvents
/// certified per InexactnessBudget. Exits when the inexact displacement norm
/// is at most 3 eps / 4, which puts the exact displacement within eps.
/// Returns both the anchor-side iterate (final_point) and the resolvent
/// point (companion_point).
SolverReport halpern_lipschitz_solve(const Operator& f, const FeasibleSet& set, const Vec& u0,
                                     double eps, const InexactOptions& opts = {});

/// Same iteration on F/eta, for callers that know the order of magnitude of
/// the Lipschitz constant. Exits when the scaled displacement norm is at most
/// 3 eps / (4 eta), certifying the original inclusion at level eps.
SolverReport scaled_resolvent_solve(const Operator& f, const FeasibleSet& set, const Vec& u0,
                                    double eps, double eta, const InexactOptions& opts = {});

/// Restarted scheme for strongly monotone Lipschitz operators (the modulus is
/// not needed): each round reruns halpern_lipschitz_solve with error
/// parameter (7/16) of the previous round's displacement norm, halving the
/// exact displacement per round. Stops when the inexact displacement plus its
/// certificate error is at most eps. Trace records one row per round.
SolverReport restart_solve(const Operator& f, const FeasibleSet& set, const Vec& u0, double eps,
                           const InexactOptions& opts = {});

}  // namespace mincl

#endif
