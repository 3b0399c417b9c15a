#ifndef MINCL_INSTANCES_HPP
#define MINCL_INSTANCES_HPP

#include <cstdint>
#include <random>

#include "mincl/problem.hpp"

namespace mincl {

// Seeded test-problem generators shared by the unit tests, the verification
// battery, and the CLI. All metadata is exact by construction (spectra are
// chosen, not estimated), so budget assertions measure the solver and not the
// estimator.

/// Symmetric positive-definite affine operator on the whole space with the
/// solution stored as reference; eigenvalues span [0.3, 2.5].
ProblemInstance cocoercive_affine_instance(std::uint64_t seed);

/// Monotone affine operator (PSD symmetric part plus a skew part) on the
/// whole space, with a known root as reference.
ProblemInstance monotone_affine_instance(std::uint64_t seed);

/// mu I + c Q with Q a block rotation, so the strong-monotonicity modulus is
/// mu and every singular value equals sqrt(mu^2 + c^2) exactly. Even seeds
/// instead draw a symmetric positive-definite spectrum.
ProblemInstance strongly_monotone_affine_instance(std::uint64_t seed);

/// The planar rotation (x, y) -> (y, -x); monotone, not cocoercive.
ProblemInstance rotation_instance();

/// Coupling-only saddle operator in dimension 2*half_dim: the stacked
/// gradient field of the bilinear pairing <x, y>. Starts from all-ones.
ProblemInstance bilinear_saddle_instance(int half_dim);

/// Rotation plus mu * identity; strongly monotone with modulus mu and
/// Lipschitz constant sqrt(1 + mu^2), both exact.
ProblemInstance regularized_rotation_instance(double mu);

/// Identity operator restricted to the box [1, 2]^dim; the solution is the
/// lower corner.
ProblemInstance box_identity_instance(int dim, std::uint64_t seed);

/// Random point of the set: a scaled Gaussian pushed through the projection.
Vec random_feasible_point(const FeasibleSet& set, std::mt19937_64& rng, double scale = 1.0);

}  // namespace mincl

#endif
