#include "mincl/resolvent.hpp"

#include <cmath>
#include <stdexcept>

namespace mincl {

Vec eg_prox_step(const Vec& f_at_ubar, const Vec& ubar, const Vec& u, double a, double m,
                 const FeasibleSet& set, OracleCounter& counter) {
  if (a <= 0.0 || m <= 0.0) throw std::invalid_argument("eg_prox_step: a and m must be positive");
  Vec target(u.size());
  double denom = 1.0 + a * m;
  for (size_t i = 0; i < u.size(); ++i) {
    target[i] = (u[i] + a * m * ubar[i] - a * f_at_ubar[i]) / denom;
  }
  return project_counted(set, target, counter);
}

namespace {

constexpr double kDeltaFactor = 5.0 * 1.4142135623730951;  // 5 sqrt(2)

std::int64_t eg_cap(const EgOptions& opts, const OperatorMetadata& md, double mu, double eps) {
  if (opts.max_iters > 0) return opts.max_iters;
  if (md.lipschitz_L && opts.distance_hint && *opts.distance_hint > 0.0) {
    double L = *md.lipschitz_L;
    double predicted =
        (16.0 * L / mu) * std::log(std::max(2.0, 20.0 * std::sqrt(2.0) * L * (*opts.distance_hint) /
                                                     (mu * eps)));
    return static_cast<std::int64_t>(64.0 * (1.0 + predicted));
  }
  return 1'000'000;
}

}  // namespace

SolverReport eg_solve(const Operator& f, const FeasibleSet& set, double mu, double eps,
                      const Vec& u0, const EgOptions& opts) {
  if (mu <= 0.0) throw std::invalid_argument("eg_solve: mu must be positive");
  if (eps <= 0.0) throw std::invalid_argument("eg_solve: eps must be positive");
  ensure_finite(u0, "initial point");
  if (!set.contains(u0, 1e-9 * (1.0 + norm(u0)))) {
    throw std::invalid_argument("eg_solve: u0 is infeasible");
  }

  SolverReport rep;
  std::int64_t cap = eg_cap(opts, f.metadata, mu, eps);

  double a = 1.0 / mu;
  if (opts.a0 && *opts.a0 > 0.0 && *opts.a0 <= 1.0 / mu) a = *opts.a0;

  Vec u = u0;
  Vec fu = eval_counted(f, u, rep.counters);
  Vec ubar = project_counted(set, sub(u, scaled(fu, a)), rep.counters);
  double delta = a * mu * eps / kDeltaFactor;
  std::int64_t backtracks = 0;

  rep.trace.push_back({0, dist(ubar, u), std::nullopt, 1.0 / a, std::nullopt, rep.counters.f_evals});

  std::int64_t k = 0;
  while (dist(ubar, u) > delta) {
    if (k >= cap) {
      rep.final_point = u;
      rep.companion_point = ubar;
      rep.residual = dist(ubar, u);
      rep.converged = false;
      return rep;
    }
    Vec f_ubar = eval_counted(f, ubar, rep.counters);
    Vec u_next = eg_prox_step(f_ubar, ubar, u, a, mu, set, rep.counters);
    // Backtrack until the step satisfies the two-point smoothness check.
    while (true) {
      double lhs = a * inner(sub(f_ubar, fu), sub(ubar, u_next));
      double rhs = 0.25 * inner(sub(u_next, ubar), sub(u_next, ubar)) +
                   0.25 * inner(sub(ubar, u), sub(ubar, u));
      if (lhs <= rhs + comparison_slack(lhs, rhs)) break;
      double df = dist(f_ubar, fu);
      a = std::min(a / 2.0, dist(ubar, u) / df);
      ubar = project_counted(set, sub(u, scaled(fu, a)), rep.counters);
      f_ubar = eval_counted(f, ubar, rep.counters);
      u_next = eg_prox_step(f_ubar, ubar, u, a, mu, set, rep.counters);
      ++backtracks;
    }
    if (opts.on_step) opts.on_step({k, u, ubar, u_next, a, delta, backtracks});
    u = std::move(u_next);
    ++k;
    fu = eval_counted(f, u, rep.counters);
    ubar = project_counted(set, sub(u, scaled(fu, a)), rep.counters);
    delta = a * mu * eps / kDeltaFactor;
    rep.trace.push_back(
        {k, dist(ubar, u), std::nullopt, 1.0 / a, std::nullopt, rep.counters.f_evals});
  }

  rep.final_point = u;
  rep.companion_point = ubar;
  rep.residual = dist(ubar, u);
  rep.converged = true;
  return rep;
}

ResolventCertificate approx_resolvent(const Operator& f, const FeasibleSet& set, const Vec& anchor,
                                      double eps, OracleCounter& counter, const EgOptions& opts) {
  if (eps <= 0.0) throw std::invalid_argument("approx_resolvent: eps must be positive");
  Operator shifted = resolvent_target_operator(f, anchor);
  SolverReport rep = eg_solve(shifted, set, 1.0, eps, anchor, opts);
  counter.f_evals += rep.counters.f_evals;
  counter.projections += rep.counters.projections;
  if (!rep.converged) {
    throw SolverStall("approx_resolvent: inner extragradient solve hit its iteration cap");
  }
  ResolventCertificate cert;
  cert.point = rep.final_point;
  cert.error_bound = eps;
  cert.queries_used = rep.counters.f_evals;
  return cert;
}

std::pair<Vec, ResolventCertificate> displacement(const Operator& f, const FeasibleSet& set,
                                                  const Vec& u, double eps, OracleCounter& counter,
                                                  const EgOptions& opts) {
  ResolventCertificate cert = approx_resolvent(f, set, u, eps, counter, opts);
  return {sub(u, cert.point), std::move(cert)};
}

Vec exact_resolvent_affine(const DenseMatrix& a, const Vec& b, const Vec& u_anchor) {
  if (!a.square()) throw std::invalid_argument("exact_resolvent_affine: matrix must be square");
  DenseMatrix system = mat_add(DenseMatrix::identity(a.rows), a);
  return solve_linear(system, sub(u_anchor, b));
}

}  // namespace mincl
