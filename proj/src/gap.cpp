#include "mincl/gap.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mincl {

double restricted_gap(const Operator& f, const FeasibleSet& set, const Vec& u, double radius,
                      const GapOptions& opts) {
  if (radius <= 0.0) throw std::invalid_argument("restricted_gap: radius must be positive");
  if (!set.contains(u, 1e-9 * (1.0 + norm(u)))) {
    throw std::invalid_argument("restricted_gap: point is infeasible");
  }
  Vec c = f.evaluate(u);
  ensure_finite(c, "restricted_gap operator value");
  double cn = norm(c);
  if (cn == 0.0) return 0.0;
  if (set.whole_space) return radius * cn;

  // v(t) = proj(u - t*c) minimizes <c,v> + ||v-u||^2/(2t) over the set, so
  // ||v(t) - u|| is nondecreasing in t and <c, u - v(t)> is nondecreasing in
  // t. The ball-constrained maximizer is v(t*) with ||v(t*) - u|| = radius,
  // or the set's own minimizer of <c, .> when the ball never activates.
  auto candidate = [&](double t) { return set.project(sub(u, scaled(c, t))); };
  auto reach = [&](const Vec& v) { return dist(v, u); };

  int evals = 0;
  double t_lo = 0.0;
  double t_hi = radius / cn;
  Vec v_lo = set.project(u);
  Vec v_hi = candidate(t_hi);
  ++evals;

  // When the ball stays inactive the finite-t answer undershoots by at most
  // radius^2/(2t), so grow t until that bound is negligible.
  const double t_cap = radius * radius / (0.02 * opts.tol * (1.0 + radius * cn)) + 2.0 * t_hi;
  while (reach(v_hi) < radius && t_hi < t_cap) {
    t_lo = t_hi;
    v_lo = v_hi;
    t_hi *= 2.0;
    v_hi = candidate(t_hi);
    if (++evals > opts.max_iters) {
      throw std::runtime_error("restricted_gap: inner maximization did not converge (growth phase, t=" +
                               std::to_string(t_hi) + ")");
    }
  }
  if (reach(v_hi) < radius) {
    // Ball inactive within tolerance: the support point of the set decides.
    return inner(c, sub(u, v_hi));
  }

  // Bisect for the tight ball constraint. v(t_lo) stays feasible for the
  // intersection throughout.
  while (evals < opts.max_iters) {
    if (reach(v_lo) >= radius * (1.0 - 1e-12)) break;
    if (norm(sub(v_hi, v_lo)) * cn <= opts.tol * 0.5) break;
    if (t_hi - t_lo <= 1e-15 * t_hi) break;
    double t_mid = 0.5 * (t_lo + t_hi);
    Vec v_mid = candidate(t_mid);
    ++evals;
    if (reach(v_mid) < radius) {
      t_lo = t_mid;
      v_lo = v_mid;
    } else {
      t_hi = t_mid;
      v_hi = v_mid;
    }
  }
  if (evals >= opts.max_iters && norm(sub(v_hi, v_lo)) * cn > opts.tol &&
      reach(v_lo) < radius * (1.0 - 1e-12)) {
    throw std::runtime_error("restricted_gap: inner maximization did not converge (bracket [" +
                             std::to_string(t_lo) + ", " + std::to_string(t_hi) + "], gap spread " +
                             std::to_string(norm(sub(v_hi, v_lo)) * cn) + ")");
  }
  // reach(v_lo) <= radius, so v_lo is feasible; on a plateau it already sits
  // at the constrained optimum.
  return inner(c, sub(u, v_lo));
}

StepSizeDiagnostics check_halpern_step_conditions(const std::vector<double>& lambdas) {
  StepSizeDiagnostics out;
  out.decreasing = true;
  double prev = 0.0;
  bool have_prev = false;
  for (double l : lambdas) {
    if (!(l > 0.0) || !(l < 1.0)) {
      throw std::invalid_argument("check_halpern_step_conditions: lambda outside (0, 1)");
    }
    out.lambda_sum += l;
    if (have_prev) {
      out.abs_diff_sum += std::fabs(l - prev);
      if (l >= prev) out.decreasing = false;
    }
    prev = l;
    have_prev = true;
  }
  return out;
}

}  // namespace mincl
