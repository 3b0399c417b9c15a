#include "mincl/halpern.hpp"

#include <cmath>
#include <stdexcept>

namespace mincl {

double potential_value(const Vec& f_at_u, const Vec& u0, const Vec& u, double lambda, double L) {
  if (lambda >= 1.0) throw std::invalid_argument("potential_value: lambda must be < 1");
  if (L <= 0.0) throw std::invalid_argument("potential_value: L must be positive");
  return inner(f_at_u, f_at_u) / L - (lambda / (1.0 - lambda)) * inner(f_at_u, sub(u0, u));
}

double lambda_update(double lambda_prev, double L_prev, double L_curr) {
  if (!(lambda_prev > 0.0) || !(lambda_prev < 1.0)) {
    throw std::invalid_argument("lambda_update: lambda_prev outside (0, 1)");
  }
  if (L_prev <= 0.0 || L_curr <= 0.0) {
    throw std::invalid_argument("lambda_update: L values must be positive");
  }
  double p = (L_prev / L_curr) * lambda_prev / (1.0 - lambda_prev);
  return p / (1.0 + 2.0 * p);
}

bool cocoercivity_condition(const Vec& f_at_u, const Vec& f_at_u_prev, const Vec& u,
                            const Vec& u_prev, double L) {
  Vec df = sub(f_at_u, f_at_u_prev);
  double lhs = inner(df, sub(u, u_prev));
  double rhs = inner(df, df) / L;
  return lhs >= rhs - comparison_slack(lhs, rhs);
}

namespace {

std::int64_t derived_cap(const HalpernOptions& opts, const OperatorMetadata& md, double eps,
                         double coco_factor) {
  if (opts.max_iters > 0) return opts.max_iters;
  if (md.cocoercivity_gamma && *md.cocoercivity_gamma > 0.0 && opts.distance_hint) {
    double L = 1.0 / *md.cocoercivity_gamma;
    double bound = std::max(coco_factor * L, opts.L0) * (*opts.distance_hint) / eps +
                   std::max(0.0, std::log2(coco_factor * L / opts.L0));
    return static_cast<std::int64_t>(10.0 * (bound + 1.0));
  }
  return 10'000'000;
}

}  // namespace

SolverReport halpern_cocoercive_solve(const Operator& f, const Vec& u0, double eps,
                                      const HalpernOptions& opts) {
  if (eps <= 0.0) throw std::invalid_argument("halpern_cocoercive_solve: eps must be positive");
  if (opts.L0 <= 0.0) throw std::invalid_argument("halpern_cocoercive_solve: L0 must be positive");
  ensure_finite(u0, "initial point");

  SolverReport rep;
  std::int64_t cap = derived_cap(opts, f.metadata, eps, 2.0);

  double L = opts.L0;
  Vec u = u0;
  Vec fu = eval_counted(f, u, rep.counters);
  rep.trace.push_back({0, norm(fu), std::nullopt, L, std::nullopt, rep.counters.f_evals});
  if (norm(fu) <= eps) {
    rep.final_point = u;
    rep.residual = norm(fu);
    rep.converged = true;
    return rep;
  }

  double lambda_prev = 0.0;
  double weight_prev = 1.0;  // A_k
  for (std::int64_t k = 1; k <= cap; ++k) {
    double L_prev = L;
    // Iteration 1 keeps lambda = 1/2 regardless of doublings; the recurrence
    // only starts once a previous lambda exists.
    double lambda = (k == 1) ? 0.5 : lambda_update(lambda_prev, L_prev, L);
    Vec u_next = lin_comb(lambda, u0, 1.0 - lambda, sub(u, scaled(fu, 2.0 / L)));
    Vec fu_next = eval_counted(f, u_next, rep.counters);
    while (!cocoercivity_condition(fu_next, fu, u_next, u, L)) {
      L *= 2.0;
      if (k != 1) lambda = lambda_update(lambda_prev, L_prev, L);
      u_next = lin_comb(lambda, u0, 1.0 - lambda, sub(u, scaled(fu, 2.0 / L)));
      fu_next = eval_counted(f, u_next, rep.counters);
    }
    u = std::move(u_next);
    fu = std::move(fu_next);

    double potential = potential_value(fu, u0, u, lambda, L);
    double weight = (k == 1) ? 1.0 : weight_prev * lambda_prev / ((1.0 - lambda_prev) * lambda);
    double res = norm(fu);
    rep.trace.push_back({k, res, lambda, L, potential, rep.counters.f_evals});
    if (opts.on_step) opts.on_step({k, u, fu, lambda, L, potential, weight});

    lambda_prev = lambda;
    weight_prev = weight;
    if (res <= eps) {
      rep.final_point = u;
      rep.residual = res;
      rep.converged = true;
      return rep;
    }
  }
  rep.final_point = u;
  rep.residual = norm(fu);
  rep.converged = false;
  return rep;
}

namespace {

double local_lipschitz(const Vec& f_at_ubar, const Vec& f_at_u, const Vec& ubar, const Vec& u) {
  double du = dist(ubar, u);
  if (du == 0.0) return 0.0;  // then G = 0 and the solver is at its exit test
  return dist(f_at_ubar, f_at_u) / du;
}

SolverReport constrained_solve_impl(const Operator& f, const FeasibleSet& set, const Vec& u0,
                                    double eps, const HalpernOptions& opts, bool simple) {
  if (eps <= 0.0) throw std::invalid_argument("halpern_constrained_solve: eps must be positive");
  if (opts.L0 <= 0.0) throw std::invalid_argument("halpern_constrained_solve: L0 must be positive");
  ensure_finite(u0, "initial point");
  if (!set.contains(u0, 1e-9 * (1.0 + norm(u0)))) {
    throw std::invalid_argument("halpern_constrained_solve: u0 is infeasible");
  }

  SolverReport rep;
  std::int64_t cap = derived_cap(opts, f.metadata, eps, 4.0);

  double L = opts.L0;
  Vec u = u0;
  Vec fu = eval_counted(f, u, rep.counters);
  Vec ubar = project_counted(set, sub(u, scaled(fu, 1.0 / L)), rep.counters);
  Vec g = scaled(sub(u, ubar), L);
  double l_local = 0.0;
  if (!simple) {
    Vec f_ubar = eval_counted(f, ubar, rep.counters);
    l_local = local_lipschitz(f_ubar, fu, ubar, u);
  }
  auto threshold = [&]() { return simple ? eps : eps / (1.0 + l_local / L); };

  rep.trace.push_back({0, norm(g), std::nullopt, L, std::nullopt, rep.counters.f_evals});
  if (opts.on_constrained_step) opts.on_constrained_step({0, u, ubar, g, 0.0, L, l_local});

  double lambda_prev = 0.0;
  std::int64_t k = 0;
  while (norm(g) > threshold()) {
    if (k >= cap) {
      rep.final_point = u;
      rep.companion_point = ubar;
      rep.residual = norm(g);
      rep.converged = false;
      return rep;
    }
    ++k;
    double L_prev = L;
    double lambda = (k == 1) ? 0.5 : lambda_update(lambda_prev, L_prev, L);
    // ubar is the projected step at the current L, so this is the anchored
    // step u_k = lambda u0 + (1-lambda) (u_{k-1} - G_L(u_{k-1})/L).
    Vec u_next = lin_comb(lambda, u0, 1.0 - lambda, ubar);
    Vec fu_next = eval_counted(f, u_next, rep.counters);
    Vec ubar_next = project_counted(set, sub(u_next, scaled(fu_next, 1.0 / L)), rep.counters);
    Vec g_next = scaled(sub(u_next, ubar_next), L);
    Vec g_prev = g;  // G_L(u_{k-1}) for the current L

    // The mapping G_L is 1/(2L)-cocoercive once L is large enough; double
    // the estimate until the pairwise check accepts.
    while (!cocoercivity_condition(g_next, g_prev, u_next, u, 2.0 * L)) {
      L *= 2.0;
      if (k != 1) lambda = lambda_update(lambda_prev, L_prev, L);
      Vec ubar_prev = project_counted(set, sub(u, scaled(fu, 1.0 / L)), rep.counters);
      g_prev = scaled(sub(u, ubar_prev), L);
      u_next = lin_comb(lambda, u0, 1.0 - lambda, ubar_prev);
      fu_next = eval_counted(f, u_next, rep.counters);
      ubar_next = project_counted(set, sub(u_next, scaled(fu_next, 1.0 / L)), rep.counters);
      g_next = scaled(sub(u_next, ubar_next), L);
    }
    u = std::move(u_next);
    fu = std::move(fu_next);
    ubar = std::move(ubar_next);
    g = std::move(g_next);

    if (!simple) {
      Vec f_ubar = eval_counted(f, ubar, rep.counters);
      l_local = local_lipschitz(f_ubar, fu, ubar, u);
      // Raise L to the local estimate. Recompute ubar afterwards so the
      // (ubar, l_local, L) triple the exit test certifies refers to one and
      // the same step length.
      int consistency_guard = 0;
      while (l_local > L && consistency_guard++ < 128) {
        L = l_local;
        ubar = project_counted(set, sub(u, scaled(fu, 1.0 / L)), rep.counters);
        f_ubar = eval_counted(f, ubar, rep.counters);
        l_local = local_lipschitz(f_ubar, fu, ubar, u);
      }
      g = scaled(sub(u, ubar), L);
    }

    // Potential of the mapping; its cocoercivity constant is 1/(2L).
    double potential = potential_value(g, u0, u, lambda, 2.0 * L);
    rep.trace.push_back({k, norm(g), lambda, L, potential, rep.counters.f_evals});
    if (opts.on_constrained_step) opts.on_constrained_step({k, u, ubar, g, lambda, L, l_local});
    lambda_prev = lambda;
  }

  rep.final_point = u;
  rep.companion_point = ubar;
  rep.residual = norm(g);
  rep.converged = true;
  return rep;
}

}  // namespace

SolverReport halpern_constrained_solve(const Operator& f, const FeasibleSet& set, const Vec& u0,
                                       double eps, const HalpernOptions& opts) {
  return constrained_solve_impl(f, set, u0, eps, opts, false);
}

SolverReport halpern_constrained_simple_solve(const Operator& f, const FeasibleSet& set,
                                              const Vec& u0, double eps,
                                              const HalpernOptions& opts) {
  return constrained_solve_impl(f, set, u0, eps, opts, true);
}

}  // namespace mincl
