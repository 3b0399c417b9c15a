#include <stdexcept>
#include <cmath>

#include "doctest.h"
#include "mincl/halpern.hpp"
#include "mincl/instances.hpp"

using namespace mincl;

TEST_CASE("lambda recurrence") {
  CHECK(lambda_update(0.5, 1.0, 1.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  // harmonic continuation at constant L
  CHECK(lambda_update(1.0 / 3.0, 1.0, 1.0) == doctest::Approx(0.25).epsilon(1e-15));
  // doubling L shrinks the weight: p = 1/4, lambda = 1/6
  CHECK(lambda_update(1.0 / 3.0, 1.0, 2.0) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  for (double lp : {0.01, 0.2, 0.49, 0.9}) {
    for (double ratio : {0.25, 1.0, 8.0}) {
      double l = lambda_update(lp, 1.0, ratio);
      CHECK(l > 0.0);
      CHECK(l < 0.5);
    }
  }
  CHECK_THROWS_AS(lambda_update(1.0, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("pairwise cocoercivity check") {
  Vec u{1.0, 2.0}, v{0.0, 0.5};
  // identity at L = 1 holds with equality and must not trigger a doubling
  CHECK(cocoercivity_condition(u, v, u, v, 1.0));
  // doubling map at L = 1 fails: 2||du||^2 < 4||du||^2
  CHECK_FALSE(cocoercivity_condition(scaled(u, 2.0), scaled(v, 2.0), u, v, 1.0));
  CHECK(cocoercivity_condition(scaled(u, 2.0), scaled(v, 2.0), u, v, 2.0));
  // degenerate step
  CHECK(cocoercivity_condition(u, u, v, v, 1.0));
}

TEST_CASE("potential value") {
  CHECK(potential_value({0.0, 0.0}, {1.0, 0.0}, {0.3, 0.3}, 0.25, 1.0) == 0.0);
  // doubling map with the matched estimate lands on zero after one step
  Vec u0{1.0, 0.0};
  Vec u1{0.0, 0.0};  // u0 - (1/2) F(u0) with F = 2 Id
  Vec f_u1{0.0, 0.0};
  CHECK(potential_value(f_u1, u0, u1, 0.5, 2.0) == 0.0);
  CHECK_THROWS_AS(potential_value({1.0}, {0.0}, {0.0}, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("cocoercive solver kills the identity in one anchored step") {
  Operator ident = affine_operator(DenseMatrix::identity(2), {0.0, 0.0});
  SolverReport rep = halpern_cocoercive_solve(ident, {4.0, 3.0}, 1e-9);
  CHECK(rep.converged);
  CHECK(rep.residual == 0.0);
  CHECK(norm(rep.final_point) == 0.0);
  CHECK(rep.counters.f_evals == 2);
  CHECK(rep.trace.back().k == 1);
  CHECK(rep.trace.back().L == 1.0);  // no doubling on the equality case
}

TEST_CASE("cocoercive solver returns immediately below tolerance") {
  Operator ident = affine_operator(DenseMatrix::identity(2), {0.0, 0.0});
  SolverReport rep = halpern_cocoercive_solve(ident, {1e-12, 0.0}, 1e-9);
  CHECK(rep.converged);
  CHECK(rep.counters.f_evals == 1);
  CHECK(rep.final_point == Vec{1e-12, 0.0});
}

TEST_CASE("doubling map forces one doubling and satisfies the residual bound") {
  DenseMatrix two = mat_scaled(DenseMatrix::identity(2), 2.0);
  Operator op = affine_operator(two, {0.0, 0.0});
  Vec u0{1.0, 0.0};
  std::vector<double> residuals, lambdas, estimates;
  HalpernOptions opts;
  opts.on_step = [&](const CocoerciveStep& s) {
    residuals.push_back(norm(s.f_at_u));
    lambdas.push_back(s.lambda);
    estimates.push_back(s.L);
  };
  SolverReport rep = halpern_cocoercive_solve(op, u0, 1e-9, opts);
  CHECK(rep.converged);
  CHECK(estimates.front() == 2.0);  // doubled once inside iteration 1
  CHECK(rep.trace.back().L <= 4.0);
  for (size_t i = 0; i < residuals.size(); ++i) {
    double bound = estimates[i] * lambdas[i] / (1.0 - lambdas[i]) * norm(u0);
    CHECK(residuals[i] <= bound + 1e-9 * (1.0 + norm(u0)));
  }
}

TEST_CASE("estimate stays at most max(2L, L0) and doublings are budgeted") {
  ProblemInstance inst = cocoercive_affine_instance(12);
  double big_l = *inst.op.metadata.lipschitz_L;
  HalpernOptions opts;
  opts.distance_hint = dist(inst.u0, *inst.reference_solution);
  SolverReport rep = halpern_cocoercive_solve(inst.op, inst.u0, 1e-5, opts);
  CHECK(rep.converged);
  for (const TraceRecord& r : rep.trace) CHECK(r.L <= std::max(2.0 * big_l, 1.0));
  double doublings = std::log2(rep.trace.back().L / 1.0);
  CHECK(doublings <= std::max(0.0, std::ceil(std::log2(2.0 * big_l))));
}

TEST_CASE("nonconvergence is a report state") {
  ProblemInstance inst = cocoercive_affine_instance(1);
  HalpernOptions opts;
  opts.max_iters = 3;
  SolverReport rep = halpern_cocoercive_solve(inst.op, inst.u0, 1e-12, opts);
  CHECK_FALSE(rep.converged);
  CHECK(rep.trace.size() == 4);  // initial record plus three iterations
}

TEST_CASE("constrained solver on the whole space tracks the unconstrained trajectories") {
  // On the whole space the mapping equals the operator but its certified
  // cocoercivity is 1/(2L), so a run at estimate L0 walks the unconstrained
  // path started at 2*L0. With L0 = 1/2 the identity dies in one step, like
  // the unconstrained solver at its default.
  Operator ident = affine_operator(DenseMatrix::identity(2), {0.0, 0.0});
  FeasibleSet whole = make_whole_space(2);
  HalpernOptions half;
  half.L0 = 0.5;
  SolverReport rep = halpern_constrained_solve(ident, whole, {4.0, 3.0}, 1e-9, half);
  CHECK(rep.converged);
  CHECK(norm(rep.final_point) <= 1e-12);

  SolverReport simple = halpern_constrained_simple_solve(ident, whole, {4.0, 3.0}, 1e-9, half);
  CHECK(simple.converged);
  CHECK(norm(simple.final_point) <= 1e-12);
  // the plain exit test saves the local-slope query
  CHECK(simple.counters.f_evals < rep.counters.f_evals);

  // at matched estimates the residual traces coincide
  HalpernOptions doubled;
  doubled.L0 = 2.0;
  doubled.max_iters = 50;
  SolverReport uncon = halpern_cocoercive_solve(ident, {4.0, 3.0}, 1e-15, doubled);
  HalpernOptions unit;
  unit.max_iters = 50;
  SolverReport con = halpern_constrained_simple_solve(ident, whole, {4.0, 3.0}, 1e-15, unit);
  REQUIRE(uncon.trace.size() == con.trace.size());
  for (size_t i = 0; i < uncon.trace.size(); ++i) {
    CHECK(con.trace[i].residual ==
          doctest::Approx(uncon.trace[i].residual).epsilon(1e-12));
  }
}

TEST_CASE("constrained solver lands on the box corner") {
  Operator ident = affine_operator(DenseMatrix::identity(2), {0.0, 0.0});
  FeasibleSet box = make_box_set({1.0, 1.0}, {2.0, 2.0});
  Vec corner{1.0, 1.0};
  bool all_feasible = true;
  HalpernOptions opts;
  opts.on_constrained_step = [&](const ConstrainedStep& s) {
    all_feasible = all_feasible && box.contains(s.u, 1e-9 * (1.0 + norm(s.u)));
  };
  SolverReport rep = halpern_constrained_solve(ident, box, {2.0, 2.0}, 1e-5, opts);
  CHECK(rep.converged);
  CHECK(all_feasible);
  REQUIRE(rep.companion_point.has_value());
  CHECK(dist(*rep.companion_point, corner) <= 1e-5);
  CHECK(rep.residual <= 1e-5);

  // iteration count of the simple variant against its stated envelope
  SolverReport simple = halpern_constrained_simple_solve(ident, box, {2.0, 2.0}, 1e-5);
  CHECK(simple.converged);
  double envelope = std::max(4.0, 1.0) * dist(Vec{2.0, 2.0}, corner) / 1e-5;
  CHECK(static_cast<double>(simple.trace.back().k) <= envelope);
}

TEST_CASE("zero operator exits immediately on any set") {
  Operator zero;
  zero.dim = 2;
  zero.description = "zero";
  zero.evaluate = [](const Vec&) { return Vec{0.0, 0.0}; };
  FeasibleSet ball = make_ball_set({0.0, 0.0}, 1.0);
  SolverReport rep = halpern_constrained_solve(zero, ball, {0.5, 0.0}, 1e-9);
  CHECK(rep.converged);
  CHECK(rep.residual == 0.0);
  CHECK(rep.trace.size() == 1);
}

TEST_CASE("constrained solver rejects infeasible starts") {
  Operator ident = affine_operator(DenseMatrix::identity(2), {0.0, 0.0});
  FeasibleSet box = make_box_set({0.0, 0.0}, {1.0, 1.0});
  CHECK_THROWS_AS(halpern_constrained_solve(ident, box, {2.0, 2.0}, 1e-6), std::invalid_argument);
}
