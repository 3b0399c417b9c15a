#include "mincl/instances.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "mincl/operators.hpp"

namespace mincl {

namespace {

Vec gaussian_vec(std::mt19937_64& rng, int dim, double scale) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vec v(dim);
  for (double& x : v) x = scale * g(rng);
  return v;
}

// Random orthogonal matrix by Gram-Schmidt on a Gaussian matrix, with one
// re-orthogonalization pass. Good enough for the small test dimensions.
DenseMatrix random_orthogonal(std::mt19937_64& rng, int dim) {
  DenseMatrix q(dim, dim);
  std::normal_distribution<double> g(0.0, 1.0);
  for (auto& x : q.a) x = g(rng);
  for (int pass = 0; pass < 2; ++pass) {
    for (int c = 0; c < dim; ++c) {
      for (int prev = 0; prev < c; ++prev) {
        double dot = 0.0;
        for (int r = 0; r < dim; ++r) dot += q.at(r, c) * q.at(r, prev);
        for (int r = 0; r < dim; ++r) q.at(r, c) -= dot * q.at(r, prev);
      }
      double nrm = 0.0;
      for (int r = 0; r < dim; ++r) nrm += q.at(r, c) * q.at(r, c);
      nrm = std::sqrt(nrm);
      if (nrm < 1e-12) {
        q.at(c, c) += 1.0;  // degenerate draw; nudge and renormalize
        nrm = 1.0;
      }
      for (int r = 0; r < dim; ++r) q.at(r, c) /= nrm;
    }
  }
  return q;
}

DenseMatrix spectral_matrix(const DenseMatrix& v, const Vec& eig) {
  int dim = v.rows;
  DenseMatrix m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      double s = 0.0;
      for (int k = 0; k < dim; ++k) s += v.at(i, k) * eig[k] * v.at(j, k);
      m.at(i, j) = s;
    }
  // Symmetrize away the rounding residue.
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j) {
      double s = 0.5 * (m.at(i, j) + m.at(j, i));
      m.at(i, j) = s;
      m.at(j, i) = s;
    }
  return m;
}

// Block-diagonal planar rotations; orthogonal and skew-symmetric, so
// (c*Q)^T (c*Q) = c^2 I. Dimension must be even.
DenseMatrix block_rotation(int dim) {
  DenseMatrix q(dim, dim);
  for (int i = 0; i + 1 < dim; i += 2) {
    q.at(i, i + 1) = 1.0;
    q.at(i + 1, i) = -1.0;
  }
  return q;
}

ProblemInstance affine_instance_from(DenseMatrix a, Vec ustar, std::mt19937_64& rng,
                                     double offset_scale) {
  int dim = a.rows;
  Vec b = scaled(matvec(a, ustar), -1.0);
  ProblemInstance inst;
  inst.op = affine_operator(a, b);
  inst.set = make_whole_space(dim);
  inst.u0 = add(ustar, gaussian_vec(rng, dim, offset_scale));
  inst.reference_solution = ustar;
  inst.operator_tag = "affine";
  inst.set_tag = "whole-space";
  inst.affine_matrix = std::move(a);
  inst.affine_offset = std::move(b);
  return inst;
}

}  // namespace

ProblemInstance cocoercive_affine_instance(std::uint64_t seed) {
  std::mt19937_64 rng(0x9E3779B97F4A7C15ULL ^ seed);
  std::uniform_int_distribution<int> dim_d(2, 10);
  int dim = dim_d(rng);
  std::uniform_real_distribution<double> eig_d(0.3, 2.5);
  Vec eig(dim);
  for (double& e : eig) e = eig_d(rng);
  // Pin the extremes so L and mu are exact.
  double lo = 0.3 + 0.2 * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  double hi = 1.0 + 1.5 * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  eig[0] = lo;
  eig[dim - 1] = hi;
  for (int i = 1; i + 1 < dim; ++i) eig[i] = std::clamp(eig[i], lo, hi);

  DenseMatrix v = random_orthogonal(rng, dim);
  DenseMatrix a = spectral_matrix(v, eig);
  Vec ustar = gaussian_vec(rng, dim, 1.0);
  ProblemInstance inst = affine_instance_from(std::move(a), std::move(ustar), rng, 0.6);
  inst.op.metadata.lipschitz_L = hi;
  inst.op.metadata.strong_mono_mu = lo;
  inst.op.metadata.cocoercivity_gamma = 1.0 / hi;
  return inst;
}

ProblemInstance monotone_affine_instance(std::uint64_t seed) {
  std::mt19937_64 rng(0xD1B54A32D192ED03ULL ^ seed);
  std::uniform_int_distribution<int> dim_d(2, 8);
  int dim = dim_d(rng);
  std::uniform_real_distribution<double> eig_d(0.0, 1.5);
  Vec eig(dim);
  for (double& e : eig) e = eig_d(rng);
  DenseMatrix sym = spectral_matrix(random_orthogonal(rng, dim), eig);

  DenseMatrix skew(dim, dim);
  std::normal_distribution<double> g(0.0, 0.5);
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j) {
      double x = g(rng);
      skew.at(i, j) = x;
      skew.at(j, i) = -x;
    }
  DenseMatrix a = mat_add(sym, skew);
  Vec ustar = gaussian_vec(rng, dim, 1.0);
  return affine_instance_from(std::move(a), std::move(ustar), rng, 1.0);
}

ProblemInstance strongly_monotone_affine_instance(std::uint64_t seed) {
  std::mt19937_64 rng(0xA0761D6478BD642FULL ^ seed);
  std::uniform_real_distribution<double> mu_d(0.2, 1.2);
  double mu = mu_d(rng);
  ProblemInstance inst;
  if (seed % 2 == 0) {
    int dim = 2 * std::uniform_int_distribution<int>(1, 4)(rng);
    double c = std::uniform_real_distribution<double>(0.5, 2.0)(rng);
    DenseMatrix a = mat_add(mat_scaled(DenseMatrix::identity(dim), mu),
                            mat_scaled(block_rotation(dim), c));
    Vec ustar = gaussian_vec(rng, dim, 1.0);
    inst = affine_instance_from(std::move(a), std::move(ustar), rng, 1.0);
    inst.op.metadata.lipschitz_L = std::sqrt(mu * mu + c * c);
    inst.op.metadata.strong_mono_mu = mu;
  } else {
    int dim = std::uniform_int_distribution<int>(2, 8)(rng);
    double hi = mu + std::uniform_real_distribution<double>(0.5, 2.0)(rng);
    Vec eig(dim);
    for (double& e : eig) e = std::uniform_real_distribution<double>(mu, hi)(rng);
    eig[0] = mu;
    eig[dim - 1] = hi;
    DenseMatrix a = spectral_matrix(random_orthogonal(rng, dim), eig);
    Vec ustar = gaussian_vec(rng, dim, 1.0);
    inst = affine_instance_from(std::move(a), std::move(ustar), rng, 1.0);
    inst.op.metadata.lipschitz_L = hi;
    inst.op.metadata.strong_mono_mu = mu;
    inst.op.metadata.cocoercivity_gamma = 1.0 / hi;
  }
  return inst;
}

ProblemInstance rotation_instance() {
  DenseMatrix a(2, 2);
  a.at(0, 1) = 1.0;
  a.at(1, 0) = -1.0;
  ProblemInstance inst;
  inst.op = affine_operator(a, Vec{0.0, 0.0});
  inst.op.metadata.lipschitz_L = 1.0;
  inst.op.metadata.strong_mono_mu = 0.0;
  inst.set = make_whole_space(2);
  inst.u0 = Vec{1.0, 1.0};
  inst.reference_solution = Vec{0.0, 0.0};
  inst.operator_tag = "affine";
  inst.set_tag = "whole-space";
  inst.affine_matrix = std::move(a);
  inst.affine_offset = Vec{0.0, 0.0};
  return inst;
}

ProblemInstance bilinear_saddle_instance(int half_dim) {
  if (half_dim < 1) throw std::invalid_argument("bilinear_saddle_instance: half_dim must be >= 1");
  int dim = 2 * half_dim;
  auto grad_x = [](const Vec&, const Vec& y) { return y; };
  auto grad_y = [](const Vec& x, const Vec&) { return x; };
  ProblemInstance inst;
  inst.op = saddle_operator(grad_x, grad_y, half_dim, half_dim, 1.0, "bilinear-saddle");
  inst.op.metadata.strong_mono_mu = 0.0;
  inst.set = make_whole_space(dim);
  inst.u0 = Vec(dim, 1.0);
  inst.reference_solution = Vec(dim, 0.0);
  inst.operator_tag = "saddle-quadratic";
  inst.set_tag = "whole-space";
  DenseMatrix m(dim, dim);
  for (int i = 0; i < half_dim; ++i) {
    m.at(i, half_dim + i) = 1.0;
    m.at(half_dim + i, i) = -1.0;
  }
  inst.affine_matrix = std::move(m);
  inst.affine_offset = Vec(dim, 0.0);
  return inst;
}

ProblemInstance regularized_rotation_instance(double mu) {
  if (mu <= 0.0) throw std::invalid_argument("regularized_rotation_instance: mu must be positive");
  ProblemInstance base = rotation_instance();
  ProblemInstance inst;
  inst.op = regularize(base.op, mu, Vec{0.0, 0.0});
  inst.op.metadata.lipschitz_L = std::sqrt(1.0 + mu * mu);
  inst.op.metadata.strong_mono_mu = mu;
  inst.set = make_whole_space(2);
  inst.u0 = Vec{1.0, 1.0};
  inst.reference_solution = Vec{0.0, 0.0};
  inst.operator_tag = "regularized";
  inst.set_tag = "whole-space";
  DenseMatrix m(2, 2);
  m.at(0, 0) = mu;
  m.at(0, 1) = 1.0;
  m.at(1, 0) = -1.0;
  m.at(1, 1) = mu;
  inst.affine_matrix = std::move(m);
  inst.affine_offset = Vec{0.0, 0.0};
  return inst;
}

ProblemInstance box_identity_instance(int dim, std::uint64_t seed) {
  if (dim < 1) throw std::invalid_argument("box_identity_instance: dim must be >= 1");
  std::mt19937_64 rng(0xE7037ED1A0B428DBULL ^ seed);
  ProblemInstance inst;
  inst.op = affine_operator(DenseMatrix::identity(dim), Vec(dim, 0.0));
  Vec lower(dim, 1.0);
  Vec upper(dim, 2.0);
  inst.set = make_box_set(lower, upper);
  std::uniform_real_distribution<double> inside(1.0, 2.0);
  inst.u0.resize(dim);
  for (double& x : inst.u0) x = inside(rng);
  inst.reference_solution = lower;
  inst.operator_tag = "affine";
  inst.set_tag = "box";
  inst.affine_matrix = DenseMatrix::identity(dim);
  inst.affine_offset = Vec(dim, 0.0);
  return inst;
}

Vec random_feasible_point(const FeasibleSet& set, std::mt19937_64& rng, double scale) {
  Vec raw = gaussian_vec(rng, set.dim, scale);
  if (set.whole_space) return raw;
  return set.project(raw);
}

}  // namespace mincl
