#include <stdexcept>
#include <cmath>
#include <random>

#include "doctest.h"
#include "mincl/instances.hpp"
#include "mincl/operators.hpp"

using namespace mincl;

namespace {

DenseMatrix rotation2() {
  DenseMatrix m(2, 2);
  m.at(0, 1) = 1.0;
  m.at(1, 0) = -1.0;
  return m;
}

}  // namespace

TEST_CASE("affine operator values and spectral metadata") {
  Operator ident = affine_operator(DenseMatrix::identity(2), {0.0, 0.0});
  CHECK(ident.evaluate({2.0, -1.0}) == Vec{2.0, -1.0});
  CHECK(*ident.metadata.lipschitz_L == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(*ident.metadata.strong_mono_mu == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(*ident.metadata.cocoercivity_gamma == doctest::Approx(1.0).epsilon(1e-9));

  Operator rot = affine_operator(rotation2(), {0.0, 0.0});
  CHECK(rot.evaluate({1.0, 0.0}) == Vec{0.0, -1.0});
  CHECK(*rot.metadata.lipschitz_L == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(*rot.metadata.strong_mono_mu == doctest::Approx(0.0));
  CHECK_FALSE(rot.metadata.cocoercivity_gamma.has_value());

  DenseMatrix diag(2, 2);
  diag.at(0, 0) = 2.0;
  diag.at(1, 1) = 0.5;
  Operator op = affine_operator(diag, {1.0, -1.0});
  CHECK(op.evaluate({1.0, 1.0}) == Vec{3.0, -0.5});
  CHECK(*op.metadata.lipschitz_L == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(*op.metadata.strong_mono_mu == doctest::Approx(0.5).epsilon(1e-9));

  DenseMatrix rect(2, 3);
  CHECK_THROWS_AS(affine_operator(rect, {0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("saddle operator stacks the gradient blocks") {
  // coupling-only objective: F(x, y) = (y, -x)
  Operator bilinear = saddle_operator([](const Vec&, const Vec& y) { return y; },
                                      [](const Vec& x, const Vec&) { return x; }, 2, 2, 1.0);
  CHECK(bilinear.evaluate({1.0, 2.0, 3.0, 4.0}) == Vec{3.0, 4.0, -1.0, -2.0});

  // decoupled quadratic with opposite curvature: F(x, y) = (x, y)
  Operator decoupled = saddle_operator([](const Vec& x, const Vec&) { return x; },
                                       [](const Vec&, const Vec& y) { return scaled(y, -1.0); }, 1,
                                       1, 1.0);
  CHECK(decoupled.evaluate({3.0, -2.0}) == Vec{3.0, -2.0});

  // block quadratic: F = [[Q, I], [-I, R]] (x; y)
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g(0.0, 1.0);
  DenseMatrix q(2, 2), r(2, 2);
  for (int i = 0; i < 2; ++i) {
    q.at(i, i) = 1.0 + std::fabs(g(rng));
    r.at(i, i) = 1.0 + std::fabs(g(rng));
  }
  Operator quad = saddle_operator(
      [&](const Vec& x, const Vec& y) { return add(matvec(q, x), y); },
      [&](const Vec& x, const Vec& y) { return sub(x, matvec(r, y)); }, 2, 2, std::nullopt);
  DenseMatrix stacked(4, 4);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      stacked.at(i, j) = q.at(i, j);
      stacked.at(2 + i, 2 + j) = r.at(i, j);
    }
    stacked.at(i, 2 + i) = 1.0;
    stacked.at(2 + i, i) = -1.0;
  }
  for (int trial = 0; trial < 20; ++trial) {
    Vec u(4);
    for (double& x : u) x = g(rng);
    Vec via_blocks = quad.evaluate(u);
    Vec via_matrix = matvec(stacked, u);
    CHECK(dist(via_blocks, via_matrix) <= 1e-12 * (1.0 + norm(via_matrix)));
  }

  Operator bad = saddle_operator([](const Vec&, const Vec&) { return Vec{1.0}; },
                                 [](const Vec&, const Vec&) { return Vec{1.0}; }, 2, 1, 1.0);
  CHECK_THROWS_AS(bad.evaluate({1.0, 2.0, 3.0}), std::invalid_argument);
}

TEST_CASE("regularize shifts values and metadata") {
  Operator zero;
  zero.dim = 2;
  zero.description = "zero";
  zero.evaluate = [](const Vec&) { return Vec{0.0, 0.0}; };
  Operator reg = regularize(zero, 1.0, {0.0, 0.0});
  CHECK(reg.evaluate({3.0, -4.0}) == Vec{3.0, -4.0});

  Operator ident = affine_operator(DenseMatrix::identity(2), {0.0, 0.0});
  Operator twice = regularize(ident, 1.0, {0.0, 0.0});
  CHECK(twice.evaluate({1.0, 2.0}) == Vec{2.0, 4.0});
  CHECK(*twice.metadata.lipschitz_L == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(*twice.metadata.strong_mono_mu == doctest::Approx(2.0).epsilon(1e-9));

  Operator rot = affine_operator(rotation2(), {0.0, 0.0});
  Operator damped = regularize(rot, 0.1, {0.0, 0.0});
  CHECK(*damped.metadata.strong_mono_mu == doctest::Approx(0.1).epsilon(1e-9));
  CHECK(*damped.metadata.lipschitz_L == doctest::Approx(1.1).epsilon(1e-9));

  CHECK_THROWS_AS(regularize(ident, -1.0, {0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("resolvent target operator has its root at the resolvent") {
  Operator zero;
  zero.dim = 2;
  zero.evaluate = [](const Vec&) { return Vec{0.0, 0.0}; };
  Operator shifted = resolvent_target_operator(zero, {1.0, 0.0});
  CHECK(shifted.evaluate({1.0, 0.0}) == Vec{0.0, 0.0});
  CHECK(shifted.evaluate({2.0, 1.0}) == Vec{1.0, 1.0});

  Operator ident = affine_operator(DenseMatrix::identity(2), {0.0, 0.0});
  Operator t = resolvent_target_operator(ident, {2.0, 0.0});
  CHECK(norm(t.evaluate({1.0, 0.0})) == 0.0);  // (I + I) v = anchor at v = (1, 0)
  CHECK(*t.metadata.lipschitz_L == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(*t.metadata.strong_mono_mu == doctest::Approx(2.0).epsilon(1e-9));

  Operator rot = affine_operator(rotation2(), {0.0, 0.0});
  Operator tr = resolvent_target_operator(rot, {1.0, 1.0});
  CHECK(norm(tr.evaluate({0.0, 1.0})) == 0.0);  // [[1,1],[-1,1]] v = (1,1) at v = (0,1)
}

TEST_CASE("cocoercivity verifier") {
  Operator ident = affine_operator(DenseMatrix::identity(2), {0.0, 0.0});
  CHECK(verify_cocoercive(ident, 1.0, {1.0, 2.0}, {-0.5, 0.25}));

  Operator rot = affine_operator(rotation2(), {0.0, 0.0});
  CHECK_FALSE(verify_cocoercive(rot, 0.5, {1.0, 0.0}, {0.0, 0.0}));

  DenseMatrix two = mat_scaled(DenseMatrix::identity(3), 2.0);
  Operator twice = affine_operator(two, {0.0, 0.0, 0.0});
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    Vec u(3), v(3);
    for (int i = 0; i < 3; ++i) {
      u[i] = g(rng);
      v[i] = g(rng);
    }
    CHECK(verify_cocoercive(twice, 0.5, u, v));  // equality case
  }
}

TEST_CASE("declared metadata holds on random pairs") {
  std::mt19937_64 rng(23);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<ProblemInstance> catalogue;
  for (std::uint64_t seed = 0; seed < 3; ++seed) catalogue.push_back(monotone_affine_instance(seed));
  catalogue.push_back(regularized_rotation_instance(0.3));
  catalogue.push_back(bilinear_saddle_instance(2));
  for (const ProblemInstance& inst : catalogue) {
    double mu = inst.op.metadata.strong_mono_mu.value_or(0.0);
    for (int trial = 0; trial < 200; ++trial) {
      Vec u(inst.op.dim), v(inst.op.dim);
      for (int i = 0; i < inst.op.dim; ++i) {
        u[i] = 2.0 * g(rng);
        v[i] = 2.0 * g(rng);
      }
      Vec df = sub(inst.op.evaluate(u), inst.op.evaluate(v));
      Vec du = sub(u, v);
      CHECK(inner(df, du) >= mu * inner(du, du) - 1e-10);
      if (inst.op.metadata.lipschitz_L) {
        CHECK(norm(df) <= *inst.op.metadata.lipschitz_L * norm(du) + 1e-10);
      }
    }
  }
}

TEST_CASE("counted evaluation validates dimensions and values") {
  Operator ident = affine_operator(DenseMatrix::identity(2), {0.0, 0.0});
  OracleCounter ctr;
  CHECK_THROWS_AS(eval_counted(ident, {1.0, 2.0, 3.0}, ctr), std::invalid_argument);

  Operator bad;
  bad.dim = 1;
  bad.evaluate = [](const Vec&) { return Vec{std::nan("")}; };
  CHECK_THROWS_AS(eval_counted(bad, {1.0}, ctr), std::invalid_argument);

  Operator wrong;
  wrong.dim = 2;
  wrong.evaluate = [](const Vec&) { return Vec{1.0}; };
  CHECK_THROWS_AS(eval_counted(wrong, {1.0, 2.0}, ctr), std::invalid_argument);

  OperatorMetadata md;
  md.cocoercivity_gamma = 1.0;
  md.lipschitz_L = 2.0;  // violates L <= 1/gamma
  CHECK_THROWS_AS(md.validate(), std::invalid_argument);
}
