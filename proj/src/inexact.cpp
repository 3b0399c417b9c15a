#include "mincl/inexact.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>
#include <utility>

#include "mincl/halpern.hpp"

namespace mincl {

namespace {

struct LipschitzRun {
  bool converged = false;
  bool inner_stalled = false;
  Vec u;
  Vec ubar;
  double ptilde_norm = 0.0;
  double final_cert = 0.0;
  std::vector<TraceRecord> trace;
};

std::int64_t lipschitz_cap(const InexactOptions& opts, double eps) {
  if (opts.max_iters > 0) return opts.max_iters;
  if (opts.distance_hint && *opts.distance_hint > 0.0) {
    return static_cast<std::int64_t>(10.0 * (8.0 * (*opts.distance_hint) / eps + 2.0));
  }
  return 10'000'000;
}

// The iteration body shared by the plain and restarted solvers. Oracle work
// accumulates into the caller's counter.
LipschitzRun run_lipschitz(const Operator& f, const FeasibleSet& set, const Vec& u0, double eps,
                           const InexactOptions& opts, OracleCounter& counter) {
  LipschitzRun out;
  InexactnessBudget budget{eps};
  std::int64_t cap = lipschitz_cap(opts, eps);

  Vec u = u0;
  Vec ubar;
  double cert = budget.at(0);
  try {
    ubar = approx_resolvent(f, set, u, cert, counter).point;
  } catch (const SolverStall&) {
    out.inner_stalled = true;
    out.u = u;
    out.ubar = u;
    out.ptilde_norm = 0.0;
    return out;
  }
  Vec ptilde = sub(u, ubar);
  double pnorm = norm(ptilde);
  out.trace.push_back({0, pnorm, std::nullopt, 2.0, std::nullopt, counter.f_evals});
  if (opts.on_step) opts.on_step({0, u, ubar, pnorm, cert, 0.0});

  std::int64_t k = 0;
  while (pnorm > 0.75 * eps) {
    if (k >= cap) {
      out.u = std::move(u);
      out.ubar = std::move(ubar);
      out.ptilde_norm = pnorm;
      out.final_cert = cert;
      return out;  // converged stays false
    }
    ++k;
    double lambda = 1.0 / static_cast<double>(k + 1);
    cert = budget.at(k);
    u = lin_comb(lambda, u0, 1.0 - lambda, ubar);
    try {
      ubar = approx_resolvent(f, set, u, cert, counter).point;
    } catch (const SolverStall&) {
      out.inner_stalled = true;
      out.u = std::move(u);
      out.ubar = out.u;
      out.ptilde_norm = pnorm;
      out.final_cert = cert;
      return out;
    }
    ptilde = sub(u, ubar);
    pnorm = norm(ptilde);
    // The displacement is 1/2-cocoercive, so its estimate in the potential is 2.
    double potential = potential_value(ptilde, u0, u, lambda, 2.0);
    out.trace.push_back({k, pnorm, lambda, 2.0, potential, counter.f_evals});
    if (opts.on_step) opts.on_step({k, u, ubar, pnorm, cert, lambda});
  }

  out.converged = true;
  out.u = std::move(u);
  out.ubar = std::move(ubar);
  out.ptilde_norm = pnorm;
  out.final_cert = cert;
  return out;
}

}  // namespace

SolverReport halpern_lipschitz_solve(const Operator& f, const FeasibleSet& set, const Vec& u0,
                                     double eps, const InexactOptions& opts) {
  if (eps <= 0.0) throw std::invalid_argument("halpern_lipschitz_solve: eps must be positive");
  ensure_finite(u0, "initial point");
  if (!set.contains(u0, 1e-9 * (1.0 + norm(u0)))) {
    throw std::invalid_argument("halpern_lipschitz_solve: u0 is infeasible");
  }
  SolverReport rep;
  LipschitzRun run = run_lipschitz(f, set, u0, eps, opts, rep.counters);
  rep.final_point = std::move(run.u);
  rep.companion_point = std::move(run.ubar);
  rep.residual = run.ptilde_norm;
  rep.trace = std::move(run.trace);
  rep.converged = run.converged;
  return rep;
}

SolverReport scaled_resolvent_solve(const Operator& f, const FeasibleSet& set, const Vec& u0,
                                    double eps, double eta, const InexactOptions& opts) {
  if (eta <= 0.0) throw std::invalid_argument("scaled_resolvent_solve: eta must be positive");
  Operator scaled_op;
  scaled_op.dim = f.dim;
  scaled_op.description = f.description + "/eta";
  auto base = std::make_shared<Operator>(f);
  scaled_op.evaluate = [base, eta](const Vec& u) {
    Vec out = base->evaluate(u);
    for (double& x : out) x /= eta;
    return out;
  };
  if (f.metadata.lipschitz_L) scaled_op.metadata.lipschitz_L = *f.metadata.lipschitz_L / eta;
  if (f.metadata.strong_mono_mu) scaled_op.metadata.strong_mono_mu = *f.metadata.strong_mono_mu / eta;
  if (f.metadata.cocoercivity_gamma) {
    scaled_op.metadata.cocoercivity_gamma = *f.metadata.cocoercivity_gamma * eta;
  }
  return halpern_lipschitz_solve(scaled_op, set, u0, eps / eta, opts);
}

SolverReport restart_solve(const Operator& f, const FeasibleSet& set, const Vec& u0, double eps,
                           const InexactOptions& opts) {
  if (eps <= 0.0) throw std::invalid_argument("restart_solve: eps must be positive");
  ensure_finite(u0, "initial point");
  if (!set.contains(u0, 1e-9 * (1.0 + norm(u0)))) {
    throw std::invalid_argument("restart_solve: u0 is infeasible");
  }

  SolverReport rep;
  std::int64_t round_cap = opts.max_iters;
  if (round_cap <= 0) {
    if (opts.distance_hint && *opts.distance_hint > 0.0) {
      round_cap = static_cast<std::int64_t>(
          64.0 * (2.0 + std::log2(std::max(2.0, *opts.distance_hint / eps))));
    } else {
      round_cap = 10'000;
    }
  }

  // The first displacement estimate, at certificate error eps/8.
  Vec u = u0;
  Vec ubar;
  double cert = eps / 8.0;
  double pnorm = 0.0;
  try {
    auto [ptilde, c] = displacement(f, set, u, cert, rep.counters);
    pnorm = norm(ptilde);
    ubar = std::move(c.point);
  } catch (const SolverStall&) {
    rep.final_point = u;
    rep.residual = 0.0;
    rep.converged = false;
    return rep;
  }
  rep.trace.push_back({0, pnorm, std::nullopt, 2.0, std::nullopt, rep.counters.f_evals});
  if (opts.on_round) opts.on_round({0, u, pnorm, cert, 0.0, rep.counters.f_evals});

  std::int64_t round = 0;
  // Triangle inequality against the current certificate: once the inexact
  // displacement plus its error bound is within eps, the exact displacement
  // is too.
  while (pnorm + cert > eps) {
    if (round >= round_cap) {
      rep.final_point = std::move(u);
      rep.companion_point = std::move(ubar);
      rep.residual = pnorm;
      rep.converged = false;
      return rep;
    }
    ++round;
    double round_eps = (7.0 / 16.0) * pnorm;
    InexactOptions inner;
    inner.on_step = opts.on_step;
    LipschitzRun run = run_lipschitz(f, set, u, round_eps, inner, rep.counters);
    if (!run.converged) {
      rep.final_point = std::move(run.u);
      rep.companion_point = std::move(run.ubar);
      rep.residual = run.ptilde_norm;
      rep.converged = false;
      return rep;
    }
    u = std::move(run.u);
    ubar = std::move(run.ubar);
    pnorm = run.ptilde_norm;
    cert = run.final_cert;
    rep.trace.push_back({round, pnorm, std::nullopt, 2.0, std::nullopt, rep.counters.f_evals});
    if (opts.on_round) opts.on_round({round, u, pnorm, cert, round_eps, rep.counters.f_evals});
  }

  rep.final_point = std::move(u);
  rep.companion_point = std::move(ubar);
  rep.residual = pnorm;
  rep.converged = true;
  return rep;
}

}  // namespace mincl
