#include <stdexcept>
#include <cmath>
#include <random>

#include "doctest.h"
#include "mincl/gap.hpp"
#include "mincl/instances.hpp"
#include "mincl/linalg.hpp"
#include "mincl/operators.hpp"
#include "mincl/sets.hpp"

using namespace mincl;

TEST_CASE("inner product basics") {
  CHECK(inner({1.0, 0.0}, {0.0, 1.0}) == 0.0);
  CHECK(inner({3.0, 4.0}, {3.0, 4.0}) == 25.0);
  // hand sum 4 + 10 + 18
  CHECK(inner({1.0, 2.0, 3.0}, {4.0, 5.0, 6.0}) == 32.0);
  CHECK_THROWS_AS(inner({1.0}, {1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("inner product is symmetric and bilinear on random triples") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    int d = 1 + static_cast<int>(rng() % 8);
    Vec u(d), v(d), w(d);
    for (int i = 0; i < d; ++i) {
      u[i] = g(rng);
      v[i] = g(rng);
      w[i] = g(rng);
    }
    double a = g(rng), b = g(rng);
    CHECK(inner(u, v) == doctest::Approx(inner(v, u)).epsilon(1e-12));
    double lhs = inner(add(scaled(u, a), scaled(v, b)), w);
    double rhs = a * inner(u, w) + b * inner(v, w);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("finite checks reject NaN and Inf") {
  CHECK_THROWS_AS(ensure_finite({1.0, std::nan("")}, "x"), std::invalid_argument);
  CHECK_THROWS_AS(ensure_finite({1.0, INFINITY}, "x"), std::invalid_argument);
}

TEST_CASE("linear solve and spectral helpers") {
  DenseMatrix a(2, 2);
  a.at(0, 0) = 2.0;
  a.at(1, 1) = 0.5;
  Vec x = solve_linear(a, {4.0, 1.0});
  CHECK(x[0] == doctest::Approx(2.0));
  CHECK(x[1] == doctest::Approx(2.0));
  CHECK(largest_singular_value(a) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(smallest_eigenvalue_symmetric(a) == doctest::Approx(0.5).epsilon(1e-9));

  DenseMatrix rot(2, 2);
  rot.at(0, 1) = 1.0;
  rot.at(1, 0) = -1.0;
  CHECK(largest_singular_value(rot) == doctest::Approx(1.0).epsilon(1e-9));
  DenseMatrix sym = mat_scaled(mat_add(rot, transpose(rot)), 0.5);
  CHECK(smallest_eigenvalue_symmetric(sym) == doctest::Approx(0.0));

  DenseMatrix zero(3, 3);
  CHECK_THROWS_AS(solve_linear(zero, {1.0, 2.0, 3.0}), std::runtime_error);
}

TEST_CASE("restricted gap closed-form cases") {
  Operator ident = affine_operator(DenseMatrix::identity(2), {0.0, 0.0});
  FeasibleSet whole = make_whole_space(2);
  CHECK(restricted_gap(ident, whole, {0.0, 0.0}, 1.0) == 0.0);
  // maximizer is u - F(u)/||F(u)||, so the gap equals ||F(u)||
  CHECK(restricted_gap(ident, whole, {1.0, 0.0}, 1.0) == doctest::Approx(1.0).epsilon(1e-10));

  // constant operator (2, 0) on the unit box, u at the far corner: the best
  // feasible v inside the unit ball is (0, 1), giving <(2,0), (1,0)> = 2
  Operator constant;
  constant.dim = 2;
  constant.description = "constant";
  constant.evaluate = [](const Vec&) { return Vec{2.0, 0.0}; };
  FeasibleSet box = make_box_set({0.0, 0.0}, {1.0, 1.0});
  CHECK(restricted_gap(constant, box, {1.0, 1.0}, 1.0) == doctest::Approx(2.0).epsilon(1e-9));

  CHECK_THROWS_AS(restricted_gap(ident, box, {3.0, 3.0}, 1.0), std::invalid_argument);
}

TEST_CASE("restricted gap matches a sampling oracle on box instances") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  DenseMatrix m(2, 2);
  m.at(0, 0) = 1.5;
  m.at(0, 1) = 0.3;
  m.at(1, 0) = -0.3;
  m.at(1, 1) = 0.8;
  Operator op = affine_operator(m, {0.4, -0.2});
  FeasibleSet box = make_box_set({0.0, 0.0}, {1.0, 1.0});
  for (int trial = 0; trial < 5; ++trial) {
    Vec u{unif(rng), unif(rng)};
    double radius = 0.3 + 0.7 * unif(rng);
    double gap = restricted_gap(op, box, u, radius);
    Vec c = op.evaluate(u);
    double best = 0.0;
    for (int s = 0; s < 20000; ++s) {
      Vec v{unif(rng), unif(rng)};
      if (dist(v, u) > radius) continue;
      best = std::max(best, inner(c, sub(u, v)));
    }
    CHECK(gap >= best - 1e-6);               // sampling only finds lower bounds
    CHECK(gap <= radius * norm(c) + 1e-10);  // ball support is an upper bound
    CHECK(gap >= -1e-12);
  }
}

TEST_CASE("restricted gap is nonnegative at feasible points") {
  std::mt19937_64 rng(17);
  ProblemInstance inst = cocoercive_affine_instance(2);
  std::vector<FeasibleSet> sets;
  int d = inst.op.dim;
  sets.push_back(make_box_set(Vec(d, -1.0), Vec(d, 1.0)));
  sets.push_back(make_ball_set(Vec(d, 0.0), 1.5));
  sets.push_back(make_simplex_set(d));
  for (const FeasibleSet& s : sets) {
    for (int trial = 0; trial < 25; ++trial) {
      Vec u = random_feasible_point(s, rng, 2.0);
      CHECK(restricted_gap(inst.op, s, u, 1.0) >= -1e-10);
    }
  }
}

TEST_CASE("step-size prefix diagnostics") {
  std::vector<double> harmonic, constant, quadratic;
  double sum_h = 0.0, diff_h = 0.0, prev = 0.0;
  for (int k = 1; k <= 10; ++k) {
    double l = 1.0 / (k + 1);
    harmonic.push_back(l);
    sum_h += l;
    if (k > 1) diff_h += prev - l;
    prev = l;
    constant.push_back(0.5);
    quadratic.push_back(1.0 / ((k + 1.0) * (k + 1.0)));
  }
  StepSizeDiagnostics h = check_halpern_step_conditions(harmonic);
  CHECK(h.decreasing);
  CHECK(h.lambda_sum == doctest::Approx(sum_h).epsilon(1e-15));
  CHECK(h.abs_diff_sum == doctest::Approx(diff_h).epsilon(1e-15));

  CHECK_FALSE(check_halpern_step_conditions(constant).decreasing);

  StepSizeDiagnostics q = check_halpern_step_conditions(quadratic);
  CHECK(q.decreasing);
  CHECK(q.abs_diff_sum == doctest::Approx(quadratic.front() - quadratic.back()).epsilon(1e-12));

  CHECK_THROWS_AS(check_halpern_step_conditions({0.5, 1.5}), std::invalid_argument);
  CHECK_THROWS_AS(check_halpern_step_conditions({0.0}), std::invalid_argument);
}

TEST_CASE("oracle counter matches hand-counted calls") {
  Operator ident = affine_operator(DenseMatrix::identity(2), {0.0, 0.0});
  FeasibleSet box = make_box_set({0.0, 0.0}, {1.0, 1.0});
  OracleCounter ctr;
  eval_counted(ident, {0.5, 0.5}, ctr);
  eval_counted(ident, {0.25, 0.25}, ctr);
  project_counted(box, {2.0, -1.0}, ctr);
  operator_mapping(ident, box, 1.0, {0.5, 0.5}, ctr);  // one eval + one projection
  CHECK(ctr.f_evals == 3);
  CHECK(ctr.projections == 2);
}
