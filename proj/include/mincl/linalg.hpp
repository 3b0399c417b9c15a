#ifndef MINCL_LINALG_HPP
#define MINCL_LINALG_HPP

#include <cstddef>
#include <string>
#include <vector>

namespace mincl {

// Dense coordinate vector over the Euclidean inner product. All solver
// arithmetic goes through the helpers below so that non-finite values are
// caught where they first appear.
using Vec = std::vector<double>;

/// Throws std::invalid_argument if any coordinate is NaN/Inf.
void ensure_finite(const Vec& u, const char* what);

/// Euclidean inner product. Dimension mismatch is a hard error.
double inner(const Vec& u, const Vec& v);

double norm(const Vec& u);

double dist(const Vec& u, const Vec& v);

Vec add(const Vec& u, const Vec& v);
Vec sub(const Vec& u, const Vec& v);
Vec scaled(const Vec& u, double s);

/// a*u + b*v
Vec lin_comb(double a, const Vec& u, double b, const Vec& v);

// Small dense row-major matrix. Only used for test-problem construction and
// exact linear-solve oracles, so no attempt at being fast.
struct DenseMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> a;

  DenseMatrix() = default;
  DenseMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0.0) {}

  double& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  double at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  static DenseMatrix identity(int n);
  bool square() const { return rows == cols; }
};

Vec matvec(const DenseMatrix& m, const Vec& u);
DenseMatrix transpose(const DenseMatrix& m);
DenseMatrix mat_add(const DenseMatrix& x, const DenseMatrix& y);
DenseMatrix mat_scaled(const DenseMatrix& x, double s);

/// Solves m*x = rhs by Gaussian elimination with partial pivoting.
/// Throws std::runtime_error on a (numerically) singular system.
Vec solve_linear(const DenseMatrix& m, const Vec& rhs);

/// Largest singular value, by power iteration on mᵀm
/// (relative tolerance 1e-10, 10000-step cap).
double largest_singular_value(const DenseMatrix& m);

/// Smallest eigenvalue of a symmetric matrix, by shifted power iteration.
double smallest_eigenvalue_symmetric(const DenseMatrix& s);

/// Slack for comparing floating-point realizations of exact inequalities:
/// 1e-12 * (1 + |a| + |b|).
inline double comparison_slack(double a, double b) {
  double mag = (a < 0 ? -a : a) + (b < 0 ? -b : b);
  return 1e-12 * (1.0 + mag);
}

}  // namespace mincl

#endif
