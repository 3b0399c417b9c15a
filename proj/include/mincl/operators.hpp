#ifndef MINCL_OPERATORS_HPP
#define MINCL_OPERATORS_HPP

#include <functional>
#include <optional>
#include <string>

#include "mincl/linalg.hpp"
#include "mincl/report.hpp"

namespace mincl {

// Known analytic constants of an operator. The strong-monotonicity modulus
// follows the convention <F(u)-F(v), u-v> >= mu * ||u-v||^2 (no half factor);
// cocoercivity is <F(u)-F(v), u-v> >= gamma * ||F(u)-F(v)||^2.
struct OperatorMetadata {
  std::optional<double> lipschitz_L;
  std::optional<double> strong_mono_mu;
  std::optional<double> cocoercivity_gamma;

  /// Checks internal consistency (gamma > 0 implies L <= 1/gamma, mu <= L).
  void validate() const;
};

// Single-valued operator oracle. Evaluation must be deterministic and pure;
// that is a contract, not enforced here (the harness spot-checks it by
// double evaluation at load time).
struct Operator {
  std::function<Vec(const Vec&)> evaluate;
  OperatorMetadata metadata;
  std::string description;
  int dim = 0;
};

/// Counted evaluation used by all solvers: validates dimensions and
/// finiteness and bumps the f_evals counter.
Vec eval_counted(const Operator& f, const Vec& u, OracleCounter& counter);

/// F(u) = A u + b. Metadata from the spectrum: L = sigma_max(A),
/// mu = max(0, lambda_min((A+A^T)/2)), and gamma = 1/L when A is symmetric
/// PSD with mu > 0.
Operator affine_operator(const DenseMatrix& a, const Vec& b);

/// Stacks the two gradient blocks of a convex-concave function into
/// (grad_x, -grad_y). Lipschitz constant is caller-asserted.
Operator saddle_operator(std::function<Vec(const Vec&, const Vec&)> grad_x,
                         std::function<Vec(const Vec&, const Vec&)> grad_y, int dim_x, int dim_y,
                         std::optional<double> lipschitz_L, std::string description = "saddle");

/// u -> F(u) + mu*(u - anchor); metadata shifts by mu.
Operator regularize(const Operator& f, double mu, const Vec& anchor);

/// u -> F(u) + u - anchor. The constrained solution of this operator is the
/// resolvent of F + the set's normal cone evaluated at the anchor.
Operator resolvent_target_operator(const Operator& f, const Vec& u_anchor);

/// True iff <F(u)-F(v), u-v> >= gamma*||F(u)-F(v)||^2 up to rounding slack.
bool verify_cocoercive(const Operator& f, double gamma, const Vec& u, const Vec& v);

}  // namespace mincl

#endif
