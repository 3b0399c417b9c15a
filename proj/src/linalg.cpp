#include "mincl/linalg.hpp"

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace mincl {

void ensure_finite(const Vec& u, const char* what) {
  for (double x : u) {
    if (!std::isfinite(x)) {
      throw std::invalid_argument(std::string(what) + ": non-finite coordinate");
    }
  }
}

double inner(const Vec& u, const Vec& v) {
  if (u.size() != v.size()) {
    throw std::invalid_argument("inner: dimension mismatch (" + std::to_string(u.size()) +
                                " vs " + std::to_string(v.size()) + ")");
  }
  double s = 0.0;
  for (size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

double norm(const Vec& u) { return std::sqrt(inner(u, u)); }

double dist(const Vec& u, const Vec& v) { return norm(sub(u, v)); }

Vec add(const Vec& u, const Vec& v) {
  if (u.size() != v.size()) throw std::invalid_argument("add: dimension mismatch");
  Vec w(u.size());
  for (size_t i = 0; i < u.size(); ++i) w[i] = u[i] + v[i];
  return w;
}

Vec sub(const Vec& u, const Vec& v) {
  if (u.size() != v.size()) throw std::invalid_argument("sub: dimension mismatch");
  Vec w(u.size());
  for (size_t i = 0; i < u.size(); ++i) w[i] = u[i] - v[i];
  return w;
}

Vec scaled(const Vec& u, double s) {
  Vec w(u.size());
  for (size_t i = 0; i < u.size(); ++i) w[i] = s * u[i];
  return w;
}

Vec lin_comb(double a, const Vec& u, double b, const Vec& v) {
  if (u.size() != v.size()) throw std::invalid_argument("lin_comb: dimension mismatch");
  Vec w(u.size());
  for (size_t i = 0; i < u.size(); ++i) w[i] = a * u[i] + b * v[i];
  return w;
}

DenseMatrix DenseMatrix::identity(int n) {
  DenseMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

Vec matvec(const DenseMatrix& m, const Vec& u) {
  if (static_cast<int>(u.size()) != m.cols) {
    throw std::invalid_argument("matvec: dimension mismatch");
  }
  Vec w(m.rows, 0.0);
  for (int i = 0; i < m.rows; ++i) {
    double s = 0.0;
    for (int j = 0; j < m.cols; ++j) s += m.at(i, j) * u[j];
    w[i] = s;
  }
  return w;
}

DenseMatrix transpose(const DenseMatrix& m) {
  DenseMatrix t(m.cols, m.rows);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) t.at(j, i) = m.at(i, j);
  return t;
}

DenseMatrix mat_add(const DenseMatrix& x, const DenseMatrix& y) {
  if (x.rows != y.rows || x.cols != y.cols) {
    throw std::invalid_argument("mat_add: shape mismatch");
  }
  DenseMatrix z = x;
  for (size_t i = 0; i < z.a.size(); ++i) z.a[i] += y.a[i];
  return z;
}

DenseMatrix mat_scaled(const DenseMatrix& x, double s) {
  DenseMatrix z = x;
  for (double& v : z.a) v *= s;
  return z;
}

Vec solve_linear(const DenseMatrix& m, const Vec& rhs) {
  if (!m.square() || static_cast<int>(rhs.size()) != m.rows) {
    throw std::invalid_argument("solve_linear: shape mismatch");
  }
  int n = m.rows;
  DenseMatrix a = m;
  Vec b = rhs;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    double best = std::fabs(a.at(col, col));
    for (int r = col + 1; r < n; ++r) {
      double v = std::fabs(a.at(r, col));
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best < 1e-300) throw std::runtime_error("solve_linear: singular system");
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(a.at(piv, j), a.at(col, j));
      std::swap(b[piv], b[col]);
    }
    for (int r = col + 1; r < n; ++r) {
      double f = a.at(r, col) / a.at(col, col);
      if (f == 0.0) continue;
      for (int j = col; j < n; ++j) a.at(r, j) -= f * a.at(col, j);
      b[r] -= f * b[col];
    }
  }
  Vec x(n, 0.0);
  for (int i = n - 1; i >= 0; --i) {
    double s = b[i];
    for (int j = i + 1; j < n; ++j) s -= a.at(i, j) * x[j];
    x[i] = s / a.at(i, i);
  }
  ensure_finite(x, "solve_linear result");
  return x;
}

namespace {

constexpr int kPowerIterCap = 10000;
constexpr double kPowerIterTol = 1e-10;

// Largest eigenvalue of a symmetric PSD matrix via plain power iteration with
// a fixed-seed start so metadata is deterministic.
double largest_eigenvalue_psd(const DenseMatrix& s) {
  int n = s.rows;
  std::mt19937_64 rng(0x5DEECE66DULL);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec v(n);
  for (double& x : v) x = gauss(rng);
  double nv = norm(v);
  if (nv == 0.0) v[0] = 1.0;
  else v = scaled(v, 1.0 / nv);

  double lambda = 0.0;
  for (int it = 0; it < kPowerIterCap; ++it) {
    Vec w = matvec(s, v);
    double nw = norm(w);
    if (nw < 1e-300) return 0.0;
    double lambda_new = inner(v, w);
    v = scaled(w, 1.0 / nw);
    if (it > 0 && std::fabs(lambda_new - lambda) <= kPowerIterTol * std::max(1.0, std::fabs(lambda_new))) {
      return lambda_new;
    }
    lambda = lambda_new;
  }
  return lambda;
}

}  // namespace

double largest_singular_value(const DenseMatrix& m) {
  DenseMatrix mtm = DenseMatrix(m.cols, m.cols);
  DenseMatrix t = transpose(m);
  for (int i = 0; i < m.cols; ++i)
    for (int j = 0; j < m.cols; ++j) {
      double s = 0.0;
      for (int k = 0; k < m.rows; ++k) s += t.at(i, k) * m.at(k, j);
      mtm.at(i, j) = s;
    }
  double lam = largest_eigenvalue_psd(mtm);
  return lam > 0.0 ? std::sqrt(lam) : 0.0;
}

double smallest_eigenvalue_symmetric(const DenseMatrix& s) {
  if (!s.square()) throw std::invalid_argument("smallest_eigenvalue_symmetric: not square");
  // Spectral radius first, then power iteration on (radius*I - s), which is
  // PSD and whose top eigenvalue is radius - lambda_min(s).
  double radius = largest_singular_value(s);
  if (radius == 0.0) return 0.0;
  DenseMatrix shifted = mat_add(mat_scaled(DenseMatrix::identity(s.rows), radius),
                                mat_scaled(s, -1.0));
  double top = largest_eigenvalue_psd(shifted);
  return radius - top;
}

}  // namespace mincl
