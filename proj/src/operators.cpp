#include "mincl/operators.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>
#include <utility>

namespace mincl {

void OperatorMetadata::validate() const {
  if (lipschitz_L && *lipschitz_L <= 0.0) {
    throw std::invalid_argument("metadata: lipschitz_L must be positive");
  }
  if (strong_mono_mu && *strong_mono_mu < 0.0) {
    throw std::invalid_argument("metadata: strong_mono_mu must be nonnegative");
  }
  if (cocoercivity_gamma && *cocoercivity_gamma < 0.0) {
    throw std::invalid_argument("metadata: cocoercivity_gamma must be nonnegative");
  }
  // A gamma-cocoercive operator is 1/gamma-Lipschitz, and mu <= L always.
  if (cocoercivity_gamma && *cocoercivity_gamma > 0.0 && lipschitz_L) {
    if (*lipschitz_L > 1.0 / *cocoercivity_gamma + comparison_slack(*lipschitz_L, 1.0 / *cocoercivity_gamma)) {
      throw std::invalid_argument("metadata: L exceeds 1/gamma");
    }
  }
  if (strong_mono_mu && lipschitz_L) {
    if (*strong_mono_mu > *lipschitz_L + comparison_slack(*strong_mono_mu, *lipschitz_L)) {
      throw std::invalid_argument("metadata: mu exceeds L");
    }
  }
}

Vec eval_counted(const Operator& f, const Vec& u, OracleCounter& counter) {
  if (static_cast<int>(u.size()) != f.dim) {
    throw std::invalid_argument("operator evaluation: dimension mismatch");
  }
  ensure_finite(u, "operator argument");
  Vec out = f.evaluate(u);
  if (out.size() != u.size()) {
    throw std::invalid_argument("operator evaluation: output dimension mismatch");
  }
  ensure_finite(out, "operator value");
  ++counter.f_evals;
  return out;
}

Operator affine_operator(const DenseMatrix& a, const Vec& b) {
  if (!a.square()) throw std::invalid_argument("affine_operator: matrix must be square");
  if (static_cast<int>(b.size()) != a.rows) {
    throw std::invalid_argument("affine_operator: offset dimension mismatch");
  }

  Operator op;
  op.dim = a.rows;
  op.description = "affine";
  auto mat = std::make_shared<DenseMatrix>(a);
  auto off = std::make_shared<Vec>(b);
  op.evaluate = [mat, off](const Vec& u) { return add(matvec(*mat, u), *off); };

  double big_l = largest_singular_value(a);
  DenseMatrix sym = mat_scaled(mat_add(a, transpose(a)), 0.5);
  double mu_min = smallest_eigenvalue_symmetric(sym);
  if (big_l > 0.0) op.metadata.lipschitz_L = big_l;
  op.metadata.strong_mono_mu = std::max(0.0, mu_min);

  // gamma is only derived for symmetric positive-definite matrices.
  double asym = 0.0;
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) asym = std::max(asym, std::fabs(a.at(i, j) - a.at(j, i)));
  bool symmetric = asym <= 1e-12 * (1.0 + big_l);
  if (symmetric && mu_min > 1e-12 && big_l > 0.0) {
    op.metadata.cocoercivity_gamma = 1.0 / big_l;
  }
  return op;
}

Operator saddle_operator(std::function<Vec(const Vec&, const Vec&)> grad_x,
                         std::function<Vec(const Vec&, const Vec&)> grad_y, int dim_x, int dim_y,
                         std::optional<double> lipschitz_L, std::string description) {
  if (dim_x <= 0 || dim_y <= 0) throw std::invalid_argument("saddle_operator: bad block dims");
  Operator op;
  op.dim = dim_x + dim_y;
  op.description = std::move(description);
  op.metadata.lipschitz_L = lipschitz_L;
  op.evaluate = [gx = std::move(grad_x), gy = std::move(grad_y), dim_x, dim_y](const Vec& u) {
    Vec x(u.begin(), u.begin() + dim_x);
    Vec y(u.begin() + dim_x, u.end());
    Vec fx = gx(x, y);
    Vec fy = gy(x, y);
    if (static_cast<int>(fx.size()) != dim_x || static_cast<int>(fy.size()) != dim_y) {
      throw std::invalid_argument("saddle_operator: gradient block dimension mismatch");
    }
    Vec out;
    out.reserve(u.size());
    out.insert(out.end(), fx.begin(), fx.end());
    for (double v : fy) out.push_back(-v);
    return out;
  };
  return op;
}

Operator regularize(const Operator& f, double mu, const Vec& anchor) {
  if (mu <= 0.0) throw std::invalid_argument("regularize: mu must be positive");
  if (static_cast<int>(anchor.size()) != f.dim) {
    throw std::invalid_argument("regularize: anchor dimension mismatch");
  }
  Operator op;
  op.dim = f.dim;
  op.description = f.description + "+regularizer";
  auto base = std::make_shared<Operator>(f);
  auto a = std::make_shared<Vec>(anchor);
  op.evaluate = [base, a, mu](const Vec& u) {
    Vec out = base->evaluate(u);
    for (size_t i = 0; i < out.size(); ++i) out[i] += mu * (u[i] - (*a)[i]);
    return out;
  };
  if (f.metadata.lipschitz_L) op.metadata.lipschitz_L = *f.metadata.lipschitz_L + mu;
  op.metadata.strong_mono_mu = f.metadata.strong_mono_mu.value_or(0.0) + mu;
  return op;
}

Operator resolvent_target_operator(const Operator& f, const Vec& u_anchor) {
  if (static_cast<int>(u_anchor.size()) != f.dim) {
    throw std::invalid_argument("resolvent_target_operator: anchor dimension mismatch");
  }
  Operator op;
  op.dim = f.dim;
  op.description = f.description + "+displacement";
  auto base = std::make_shared<Operator>(f);
  auto a = std::make_shared<Vec>(u_anchor);
  op.evaluate = [base, a](const Vec& u) {
    Vec out = base->evaluate(u);
    for (size_t i = 0; i < out.size(); ++i) out[i] += u[i] - (*a)[i];
    return out;
  };
  if (f.metadata.lipschitz_L) op.metadata.lipschitz_L = *f.metadata.lipschitz_L + 1.0;
  op.metadata.strong_mono_mu = f.metadata.strong_mono_mu.value_or(0.0) + 1.0;
  return op;
}

bool verify_cocoercive(const Operator& f, double gamma, const Vec& u, const Vec& v) {
  if (gamma <= 0.0) throw std::invalid_argument("verify_cocoercive: gamma must be positive");
  Vec df = sub(f.evaluate(u), f.evaluate(v));
  double lhs = inner(df, sub(u, v));
  double rhs = gamma * inner(df, df);
  return lhs >= rhs - comparison_slack(lhs, rhs);
}

}  // namespace mincl
