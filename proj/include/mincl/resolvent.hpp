#ifndef MINCL_RESOLVENT_HPP
#define MINCL_RESOLVENT_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <utility>

#include "mincl/operators.hpp"
#include "mincl/report.hpp"
#include "mincl/sets.hpp"

namespace mincl {

/// Thrown when a nested solve fails to converge and the caller asked for a
/// certified result. Top-level solvers report nonconvergence instead.
struct SolverStall : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Certified output of an approximate resolvent evaluation:
// ||point - J(anchor)|| <= error_bound.
struct ResolventCertificate {
  Vec point;
  double error_bound = 0.0;
  std::int64_t queries_used = 0;
};

struct EgStep {
  std::int64_t k;
  const Vec& u;
  const Vec& ubar;
  const Vec& u_next;
  double a;
  double delta;
  std::int64_t backtracks_so_far;
};

struct EgOptions {
  std::optional<double> a0;  // defaults to 1/mu, and is clamped to at most 1/mu
  std::int64_t max_iters = -1;
  std::optional<double> distance_hint;
  std::function<void(const EgStep&)> on_step;
};

/// Closed form of argmin over the set of
/// a<F(ubar), v> + (a m/2)||v - ubar||^2 + (1/2)||v - u||^2:
/// project (u + a m ubar - a F(ubar)) / (1 + a m). Costs one projection.
Vec eg_prox_step(const Vec& f_at_ubar, const Vec& ubar, const Vec& u, double a, double m,
                 const FeasibleSet& set, OracleCounter& counter);

/// Extragradient iteration with step-size backtracking for an operator that
/// is mu-strongly monotone (so no Lipschitz constant is needed). On
/// convergence the final point satisfies ||u - u*|| <= eps, certified by the
/// stopping rule ||ubar_k - u_k|| <= a_k mu eps / (5 sqrt(2)). The reported
/// residual is that displacement norm.
SolverReport eg_solve(const Operator& f, const FeasibleSet& set, double mu, double eps,
                      const Vec& u0, const EgOptions& opts = {});

/// Certified approximate resolvent of F + the set's normal cone at `anchor`:
/// runs eg_solve on u -> F(u) + u - anchor (1-strongly monotone) from the
/// anchor. Adds its oracle work to `counter`. Throws SolverStall if the inner
/// solve hits its iteration cap.
ResolventCertificate approx_resolvent(const Operator& f, const FeasibleSet& set, const Vec& anchor,
                                      double eps, OracleCounter& counter,
                                      const EgOptions& opts = {});

/// Inexact displacement u - J(u): returns the displacement value together
/// with the resolvent certificate backing it.
std::pair<Vec, ResolventCertificate> displacement(const Operator& f, const FeasibleSet& set,
                                                  const Vec& u, double eps, OracleCounter& counter,
                                                  const EgOptions& opts = {});

/// Exact resolvent for an affine operator on the whole space: solves
/// (I + A) v = anchor - b directly. Used as the brute-force oracle in tests.
Vec exact_resolvent_affine(const DenseMatrix& a, const Vec& b, const Vec& u_anchor);

}  // namespace mincl

#endif
